/// All permutations of `0..n` with their signs, in lexicographic order.
pub(crate) fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(n, &mut current, &mut used, &mut out);
    out
}

fn extend(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i32)>) {
    if current.len() == n {
        out.push((current.clone(), sign(current)));
        return;
    }
    for k in 0..n {
        if !used[k] {
            used[k] = true;
            current.push(k);
            extend(n, current, used, out);
            current.pop();
            used[k] = false;
        }
    }
}

fn sign(p: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
