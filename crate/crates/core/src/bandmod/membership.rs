//! Degree-bounded membership in submodules of `A^r`.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Field, Mono, Poly, Ring};
use crate::error::{Error, Result};

use super::generators::GenMatrix;

#[derive(Clone, Debug, PartialEq)]
pub enum Membership<F: Field> {
    /// `v = Σ_i a_i·g_i` in `A^r`.
    Member(Vec<Poly<F>>),
    /// No combination with coefficients of degree at most the bound.
    NotFoundUpTo(i32),
}

impl<F: Field> Membership<F> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// Monomials `x^a y^b z^c` of total degree at most `d` with `min(a,b,c) = 0`.
pub fn reduced_monomials(d: i32) -> Vec<Mono> {
    let mut out = Vec::new();
    for t in 0..=d {
        for a in 0..=t {
            for b in 0..=t - a {
                let c = t - a - b;
                if a.min(b).min(c) == 0 {
                    out.push(Mono::xyz(a, b, c));
                }
            }
        }
    }
    out
}

/// Sparse row echelon form with back substitution.
struct Sparse<F: Field> {
    ncols: usize,
    pivots: BTreeMap<usize, BTreeMap<usize, F>>,
}

impl<F: Field> Sparse<F> {
    fn new(ncols: usize) -> Self {
        Sparse {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    /// Insert a row whose last column `ncols` holds the right-hand side.
    /// Returns false when the row reduces to `0 = c ≠ 0`.
    fn insert(&mut self, mut row: BTreeMap<usize, F>) -> bool {
        loop {
            let Some((&c, v)) = row.iter().next() else {
                return true;
            };
            if c == self.ncols {
                return false;
            }
            match self.pivots.get(&c) {
                Some(p) => {
                    let f = v.clone();
                    for (&k, pv) in p {
                        let e = row.entry(k).or_insert_with(F::zero);
                        *e = e.sub(&f.mul(pv));
                        if e.is_zero() || (!F::EXACT && e.abs() < 1e-12) {
                            row.remove(&k);
                        }
                    }
                }
                None => {
                    let inv = v.inv().expect("nonzero leading entry");
                    for e in row.values_mut() {
                        *e = e.mul(&inv);
                    }
                    self.pivots.insert(c, row);
                    return true;
                }
            }
        }
    }

    fn solve(&self) -> Vec<F> {
        let mut x = vec![F::zero(); self.ncols];
        for (&p, row) in self.pivots.iter().rev() {
            let mut v = row.get(&self.ncols).cloned().unwrap_or_else(F::zero);
            for (&k, a) in row.range(p + 1..self.ncols) {
                v = v.sub(&a.mul(&x[k]));
            }
            x[p] = v;
        }
        x
    }
}

/// Decide `v ∈ ⟨gens⟩` with coefficients of total degree at most `d`, by
/// one linear system over the coefficient field.
pub fn truncated_membership<F: Field>(
    v: &[Poly<F>],
    gens: &GenMatrix<F>,
    d: i32,
) -> Result<Membership<F>> {
    let r = gens.rank();
    if v.len() != r {
        return Err(Error::ShapeMismatch(format!(
            "vector of length {} against rank {r}",
            v.len()
        )));
    }
    let m = gens.matrix();
    if m.entries().iter().chain(v.iter()).any(Poly::has_lambda) {
        return Err(Error::InvalidInput(
            "membership needs numeric parameters".into(),
        ));
    }
    let v: Vec<Poly<F>> = v.iter().map(Poly::reduce_mod_xyz).collect();
    let monos = reduced_monomials(d);
    let k = gens.count();
    let nvars = k * monos.len();
    // equation index: (row, monomial) -> coefficients
    let mut eqs: HashMap<(usize, Mono), BTreeMap<usize, F>> = HashMap::new();
    for j in 0..k {
        for (mi, &mono) in monos.iter().enumerate() {
            let var = j * monos.len() + mi;
            for row in 0..r {
                for (gm, gc) in m.get(row, j).terms() {
                    let prod = gm.mul(mono);
                    if prod.divisible_by_xyz() {
                        continue;
                    }
                    let e = eqs
                        .entry((row, prod))
                        .or_default()
                        .entry(var)
                        .or_insert_with(F::zero);
                    *e = e.add(gc);
                }
            }
        }
    }
    for (row, p) in v.iter().enumerate() {
        for (mono, c) in p.terms() {
            eqs.entry((row, *mono))
                .or_default()
                .insert(nvars, c.clone());
        }
    }
    let mut keys: Vec<(usize, Mono)> = eqs.keys().cloned().collect();
    keys.sort();
    let mut sys = Sparse::new(nvars);
    for key in keys {
        let mut row = eqs.remove(&key).unwrap();
        row.retain(|_, c| !c.is_zero());
        if !sys.insert(row) {
            return Ok(Membership::NotFoundUpTo(d));
        }
    }
    let x = sys.solve();
    let coeffs: Vec<Poly<F>> = (0..k)
        .map(|j| {
            Poly::from_terms(
                monos
                    .iter()
                    .enumerate()
                    .map(|(mi, &mo)| (mo, x[j * monos.len() + mi].clone()))
                    .collect(),
            )
        })
        .collect();
    let ok = (0..r).all(|row| {
        let mut s = Poly::zero();
        for (j, a) in coeffs.iter().enumerate() {
            s = s.add(&a.mul(m.get(row, j)));
        }
        let diff = s.reduce_mod_xyz().sub(&v[row]);
        if F::EXACT {
            diff.is_zero()
        } else {
            diff.distance(&Poly::zero()) < 1e-8
        }
    });
    if !ok {
        return Err(Error::InvalidInput(
            "membership witness failed to verify".into(),
        ));
    }
    Ok(Membership::Member(coeffs))
}

#[derive(Clone, Debug, PartialEq)]
pub enum MacaulayVerdict<F: Field> {
    /// `F ∉ M` up to the bound, and `xF, yF, zF ∈ M` with these witnesses.
    Macaulayfying([Vec<Poly<F>>; 3]),
    InModuleUpToD(Vec<Poly<F>>),
    FailsMultiplication(char),
}

pub fn macaulayfying_check<F: Field>(
    f: &[Poly<F>],
    gens: &GenMatrix<F>,
    d: i32,
) -> Result<MacaulayVerdict<F>> {
    if let Membership::Member(w) = truncated_membership(f, gens, d)? {
        return Ok(MacaulayVerdict::InModuleUpToD(w));
    }
    let mut wit: Vec<Vec<Poly<F>>> = Vec::with_capacity(3);
    for (name, var) in [('x', Poly::x()), ('y', Poly::y()), ('z', Poly::z())] {
        let v: Vec<Poly<F>> = f.iter().map(|e| e.mul(&var)).collect();
        match truncated_membership(&v, gens, d)? {
            Membership::Member(w) => wit.push(w),
            Membership::NotFoundUpTo(_) => return Ok(MacaulayVerdict::FailsMultiplication(name)),
        }
    }
    let [a, b, c]: [Vec<Poly<F>>; 3] = wit.try_into().expect("three witnesses");
    Ok(MacaulayVerdict::Macaulayfying([a, b, c]))
}
