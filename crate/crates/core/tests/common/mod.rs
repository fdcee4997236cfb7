#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use mfxyz::algebra::{Field, Matrix, Mono, Poly, PolyMatrix, Rational, Ring};

/// Parse shorthand like `-y^2`, `3/2x^2z`, `y^3+lzx^2`, `l^-1x^2`
/// (`l` is the parameter).
pub fn p<F: Field>(s: &str) -> Poly<F> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "0" {
        return Poly::zero();
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut acc = Poly::zero();
    for t in terms {
        acc = acc.add(&term(&t));
    }
    acc
}

fn term<F: Field>(t: &str) -> Poly<F> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let split = body
        .find(|c: char| "xyzl".contains(c))
        .unwrap_or(body.len());
    let coef: Rational = if split == 0 {
        Rational::ONE
    } else {
        body[..split].parse().unwrap()
    };
    let mut e = [0i16; 4];
    let rest: Vec<char> = body[split..].chars().collect();
    let mut k = 0;
    while k < rest.len() {
        let idx = "xyzl".find(rest[k]).unwrap();
        k += 1;
        let mut pow = 1i16;
        if k < rest.len() && rest[k] == '^' {
            k += 1;
            let start = k;
            if rest[k] == '-' {
                k += 1;
            }
            while k < rest.len() && rest[k].is_ascii_digit() {
                k += 1;
            }
            pow = rest[start..k].iter().collect::<String>().parse().unwrap();
        }
        e[idx] += pow;
    }
    let c = F::from_rational(&coef);
    let c = if neg { c.neg() } else { c };
    Poly::term(Mono(e), c)
}

pub fn mat<F: Field>(rows: &[&[&str]]) -> PolyMatrix<F> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| p(s)).collect())
            .collect(),
    )
}

pub fn lam<F: Field>() -> Poly<F> {
    Poly::lambda()
}

pub fn q<F: Field>(n: i64, d: i64) -> Poly<F> {
    Poly::constant(F::from_rational(&Rational::new(n, d)))
}

pub fn xyz_identity<F: Field>(n: usize) -> PolyMatrix<F> {
    Matrix::scalar(n, Poly::xyz())
}

pub fn is_mf<F: Field>(phi: &PolyMatrix<F>, psi: &PolyMatrix<F>) -> bool {
    let n = phi.rows();
    phi * psi == xyz_identity(n) && psi * phi == xyz_identity(n)
}

pub fn rot_min(w: &[i32]) -> Vec<i32> {
    (0..w.len() / 3)
        .map(|k| {
            let mut v = w.to_vec();
            v.rotate_left(3 * k);
            v
        })
        .min()
        .unwrap()
}

pub fn oracle_normal(w: &[i32]) -> bool {
    let n = w.len();
    if w.iter().all(|&x| x == -1) {
        return false;
    }
    for j in 0..n {
        let (a, b, c) = (w[(j + n - 1) % n], w[j], w[(j + 1) % n]);
        if b == 1 && (a > 0 || c > 0) {
            return false;
        }
        if b == 0 && !((a < 0 && c > 0) || (a > 0 && c < 0) || (a > 0 && c > 0)) {
            return false;
        }
    }
    for j in 0..n {
        if w[j] == 0 {
            let mut k = 1;
            while k < n && w[(j + k) % n] == -1 {
                k += 1;
            }
            if k >= 2 && k < n && w[(j + k) % n] == 0 {
                return false;
            }
        }
    }
    true
}

/// Independent exhaustive search: every rotation class of normal word
/// reachable inside the bounds.
pub fn oracle_bfs(w: &[i32], max_len: usize, max_entry: i32) -> HashSet<Vec<i32>> {
    let mut seen = HashSet::from([rot_min(w)]);
    let mut q = VecDeque::from([w.to_vec()]);
    let mut found = HashSet::new();
    while let Some(u) = q.pop_front() {
        if oracle_normal(&u) {
            found.insert(rot_min(&u));
            continue;
        }
        let n = u.len();
        let mut next: Vec<Vec<i32>> = Vec::new();
        for j in 0..n {
            let d = match u[j] {
                0 => 1,
                1 => -1,
                _ => 0,
            };
            if d != 0 {
                let mut v = u.clone();
                v[(j + n - 1) % n] += d;
                v[j] += d;
                v[(j + 1) % n] += d;
                next.push(v);
            }
        }
        // Removing a (0,0,0) triple at a triple boundary of some rotation
        // covers every removal up to shift.
        if n > 3 {
            for k in 0..n / 3 {
                let mut v = u.clone();
                v.rotate_left(3 * k);
                for s in 0..3 {
                    let mut r = v.clone();
                    r.rotate_left(s);
                    if r[..3] == [0, 0, 0] {
                        let mut rest = r[3..].to_vec();
                        rest.rotate_right(s);
                        next.push(rest);
                    }
                }
            }
        }
        for j in 0..=n {
            let mut v = u.clone();
            v.splice(j..j, [0, 0, 0]);
            next.push(v);
        }
        for v in next {
            if v.len() > max_len || v.iter().any(|x| x.abs() > max_entry) {
                continue;
            }
            if seen.insert(rot_min(&v)) {
                q.push_back(v);
            }
        }
    }
    found
}
