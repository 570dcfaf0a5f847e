//! Modified Macdonald polynomials in the Schur basis, with coefficients
//! polynomial in q = z^2, t = w^2.
//!
//! Two independent constructions are provided and cross-checked:
//! a triangularity-based linear solve (the production path) and the
//! combinatorial fillings formula summing q^inv t^maj over all fillings of
//! the diagram (the oracle, exponential but safe at small degree).

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::partition::Partition;
use crate::rat::rat_int;
use num_traits::One;
use crate::symfunc::{tables, Basis, SymFunc1};
use crate::zwpoly::ZWPoly;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// In-memory table of Schur expansions, keyed by partition.
pub struct MacdonaldTable {
    entries: Mutex<HashMap<Partition, Arc<SymFunc1<FieldElem>>>>,
}

static GLOBAL: OnceLock<MacdonaldTable> = OnceLock::new();

impl MacdonaldTable {
    pub fn global() -> &'static MacdonaldTable {
        GLOBAL.get_or_init(|| MacdonaldTable {
            entries: Mutex::new(HashMap::new()),
        })
    }

    /// The modified Macdonald polynomial of `lam` in the s-basis, computed by
    /// the triangularity solve and memoized.
    pub fn htilde(&self, lam: &Partition) -> Result<Arc<SymFunc1<FieldElem>>> {
        if let Some(f) = self.entries.lock().expect("table lock").get(lam) {
            return Ok(f.clone());
        }
        // solve the whole degree at once; every partition of |lam| is needed
        // by the kernel anyway
        let solved = solve_degree(lam.size())?;
        let mut map = self.entries.lock().expect("table lock");
        for (mu, f) in solved {
            map.entry(mu).or_insert_with(|| Arc::new(f));
        }
        map.get(lam)
            .cloned()
            .ok_or_else(|| Error::Internal(format!("htilde missing for {lam}")))
    }

    /// Partitions currently present, sorted (for deterministic dumps).
    pub fn snapshot(&self) -> Vec<(Partition, Arc<SymFunc1<FieldElem>>)> {
        let map = self.entries.lock().expect("table lock");
        let mut v: Vec<_> = map.iter().map(|(k, f)| (k.clone(), f.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Inserts a precomputed entry after validating the table invariants.
    pub fn insert_checked(&self, lam: Partition, f: SymFunc1<FieldElem>) -> Result<()> {
        validate_htilde(&lam, &f)?;
        self.entries
            .lock()
            .expect("table lock")
            .entry(lam)
            .or_insert_with(|| Arc::new(f));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("table lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Convenience wrapper over the global table.
pub fn htilde(lam: &Partition) -> Result<Arc<SymFunc1<FieldElem>>> {
    MacdonaldTable::global().htilde(lam)
}

/// Table invariants: homogeneous of the right degree, unit coefficient on
/// s_(n), and every coefficient a polynomial in q, t with nonnegative
/// integer coefficients.
pub fn validate_htilde(lam: &Partition, f: &SymFunc1<FieldElem>) -> Result<()> {
    let n = lam.size();
    for (key, c) in f.terms() {
        if key.size() != n {
            return Err(Error::Internal(format!(
                "htilde({lam}): inhomogeneous key {key}"
            )));
        }
        let p = c.poly().map_err(|_| {
            Error::Internal(format!("htilde({lam}): non-polynomial coefficient"))
        })?;
        for (&(a, b), v) in p.terms() {
            if a % 2 != 0 || b % 2 != 0 {
                return Err(Error::Internal(format!(
                    "htilde({lam}): odd exponent ({a}, {b})"
                )));
            }
            if !v.denom().is_one() || v.numer() < &0.into() {
                return Err(Error::Internal(format!(
                    "htilde({lam}): coefficient {v} not a nonnegative integer"
                )));
            }
        }
    }
    if n > 0 && !f.coeff(&Partition::row(n)).is_one() {
        return Err(Error::Internal(format!(
            "htilde({lam}): normalization <., s_(n)> != 1"
        )));
    }
    Ok(())
}

/// Applies p_m -> (q^m - 1) p_m (or the t version) to a Schur-basis element,
/// returning its Schur expansion. This is the plethystic substitution
/// X -> X(q - 1) needed by the triangularity axioms.
fn pleth_shift(f: &SymFunc1<FieldElem>, use_t: bool) -> Result<SymFunc1<FieldElem>> {
    let p = f.convert(Basis::PowerSum)?;
    let mut out = SymFunc1::zero_with_bound(Basis::PowerSum, p.degree_bound());
    for (mu, c) in p.terms() {
        let mut factor = FieldElem::one();
        for &m in mu.parts() {
            let binom = if use_t {
                ZWPoly::z_pow_minus_w_pow(0, 2 * m).scale(&rat_int(-1)) // w^{2m} - 1
            } else {
                &ZWPoly::monomial(rat_int(1), 2 * m, 0) - &ZWPoly::one() // z^{2m} - 1
            };
            factor = &factor * &FieldElem::from_poly(binom);
        }
        out.add_term(mu.clone(), &factor * c)?;
    }
    out.convert(Basis::Schur)
}

/// Solves for all modified Macdonald polynomials of one degree from the two
/// triangularity axioms and the s_(n) normalization:
///   (1) Htilde_mu[X(q-1)] is supported on {s_l : l <= mu'} (dominance),
///   (2) Htilde_mu[X(t-1)] is supported on {s_l : l <= mu},
///   (3) the coefficient of s_(n) is 1.
fn solve_degree(n: u32) -> Result<Vec<(Partition, SymFunc1<FieldElem>)>> {
    if n == 0 {
        return Ok(vec![(
            Partition::empty(),
            SymFunc1::one(Basis::Schur),
        )]);
    }
    let t = tables(n)?;
    let np = t.parts.len();

    // columns of the two plethysm maps in the Schur basis
    let mut mq = vec![vec![FieldElem::zero(); np]; np]; // mq[l][rho]
    let mut mt = vec![vec![FieldElem::zero(); np]; np];
    for (r, rho) in t.parts.iter().enumerate() {
        let s: SymFunc1<FieldElem> =
            SymFunc1::unit_with_bound(Basis::Schur, rho.clone(), n as usize)?;
        let fq = pleth_shift(&s, false)?;
        let ft = pleth_shift(&s, true)?;
        for (l, lam) in t.parts.iter().enumerate() {
            mq[l][r] = fq.coeff(lam);
            mt[l][r] = ft.coeff(lam);
        }
    }

    // the plethysm coefficients are polynomials; keep rows polynomial and
    // solve fraction-free
    let poly_row = |row: &Vec<FieldElem>| -> Result<Vec<ZWPoly>> {
        row.iter().map(|c| c.poly().cloned()).collect()
    };

    let row_index = t.index[&Partition::row(n)];
    let mut out = Vec::with_capacity(np);
    for mu in &t.parts {
        let mu_t = mu.transpose();
        let mut rows: Vec<(Vec<ZWPoly>, ZWPoly)> = Vec::new();
        for (l, lam) in t.parts.iter().enumerate() {
            if !lam.dominance_leq(&mu_t) {
                rows.push((poly_row(&mq[l])?, ZWPoly::zero()));
            }
            if !lam.dominance_leq(mu) {
                rows.push((poly_row(&mt[l])?, ZWPoly::zero()));
            }
        }
        let mut norm = vec![ZWPoly::zero(); np];
        norm[row_index] = ZWPoly::one();
        rows.push((norm, ZWPoly::one()));

        let sol = solve_fraction_free(rows, np)?;
        let mut f = SymFunc1::zero_with_bound(Basis::Schur, n as usize);
        for (i, c) in sol.into_iter().enumerate() {
            f.add_term(t.parts[i].clone(), FieldElem::from_poly(c))?;
        }
        validate_htilde(mu, &f)?;
        out.push((mu.clone(), f));
    }
    Ok(out)
}

/// Bareiss fraction-free elimination on the augmented polynomial system;
/// every division is exact. The solution is known to be polynomial (the
/// Schur coefficients of a modified Macdonald polynomial), which makes the
/// back-substitution divisions exact as well.
fn solve_fraction_free(rows: Vec<(Vec<ZWPoly>, ZWPoly)>, ncols: usize) -> Result<Vec<ZWPoly>> {
    let nrows = rows.len();
    let mut m: Vec<Vec<ZWPoly>> = rows
        .into_iter()
        .map(|(mut row, rhs)| {
            row.push(rhs);
            row
        })
        .collect();
    let cols = ncols + 1;
    let mut prev = ZWPoly::one();
    for k in 0..ncols {
        // lightest viable pivot row keeps the minors small
        let pivot = (k..nrows)
            .filter(|&r| !m[r][k].is_zero())
            .min_by_key(|&r| {
                let weight: usize = m[r].iter().map(|c| c.num_terms()).sum();
                (m[r][k].num_terms(), weight)
            });
        let Some(pr) = pivot else {
            return Err(Error::Internal(format!(
                "triangularity system is rank-deficient at column {k}"
            )));
        };
        m.swap(k, pr);
        for r in k + 1..nrows {
            let skip_cross = m[r][k].is_zero();
            for j in k + 1..cols {
                let t1 = &m[k][k] * &m[r][j];
                let upd = if skip_cross {
                    t1
                } else {
                    &t1 - &(&m[r][k] * &m[k][j])
                };
                m[r][j] = upd.exact_div(&prev)?;
            }
            m[r][k] = ZWPoly::zero();
        }
        prev = m[k][k].clone();
    }
    // consistency of the leftover rows
    for row in m.iter().take(nrows).skip(ncols) {
        if row.iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal(
                "triangularity system is inconsistent".to_string(),
            ));
        }
    }
    // back-substitution with exact divisions
    let mut sol = vec![ZWPoly::zero(); ncols];
    for j in (0..ncols).rev() {
        let mut acc = m[j][ncols].clone();
        for l in j + 1..ncols {
            acc = &acc - &(&m[j][l] * &sol[l]);
        }
        sol[j] = acc.exact_div(&m[j][j])?;
    }
    Ok(sol)
}

/// Independent oracle: the fillings formula. Sums q^inv t^maj x^sigma over
/// all fillings of the diagram of `lam`, assembled as a monomial-basis
/// expansion and converted to the Schur basis. Exponential; degree <= 6.
pub fn htilde_oracle(lam: &Partition) -> Result<SymFunc1<FieldElem>> {
    let n = lam.size();
    if n > 6 {
        return Err(Error::DegreeBound {
            needed: n as usize,
            bound: 6,
        });
    }
    if n == 0 {
        return Ok(SymFunc1::one(Basis::Schur));
    }
    // French notation: row 1 at the bottom; reading order top row first,
    // left to right. Cells as (row, col), 1-based.
    let nrows = lam.len();
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for i in (1..=nrows).rev() {
        for j in 1..=lam.part(i) as usize {
            cells.push((i, j));
        }
    }
    let lam_t = lam.transpose();
    let col_height = |j: usize| lam_t.part(j) as usize;

    let mut f = SymFunc1::zero_with_bound(Basis::Monomial, n as usize);
    for content in Partition::all(n) {
        // multiset with content[i] copies of the letter i+1
        let mut letters: Vec<u32> = Vec::with_capacity(n as usize);
        for (i, &m) in content.parts().iter().enumerate() {
            letters.extend(std::iter::repeat_n(i as u32 + 1, m as usize));
        }
        let mut coeff = ZWPoly::zero();
        multiset_permutations(&mut letters, 0, &mut |perm| {
            let value = |cell: (usize, usize)| -> u32 {
                let idx = cells.iter().position(|&c| c == cell).unwrap();
                perm[idx]
            };
            let mut maj = 0u32;
            let mut arm_sum = 0u32;
            for &(i, j) in &cells {
                if i >= 2 && value((i, j)) > value((i - 1, j)) {
                    let leg = (col_height(j) - i) as u32;
                    maj += leg + 1;
                    arm_sum += lam.part(i) - j as u32;
                }
            }
            let mut inversions = 0u32;
            for (a, &u) in cells.iter().enumerate() {
                for &vcell in cells.iter().skip(a + 1) {
                    let attacking = (u.0 == vcell.0)
                        || (u.0 == vcell.0 + 1 && u.1 > vcell.1);
                    if attacking && value(u) > value(vcell) {
                        inversions += 1;
                    }
                }
            }
            assert!(inversions >= arm_sum, "inv statistic must be nonnegative");
            let inv = inversions - arm_sum;
            coeff = &coeff + &ZWPoly::monomial(rat_int(1), 2 * inv, 2 * maj);
        });
        f.add_term(content, FieldElem::from_poly(coeff))?;
    }
    f.convert(Basis::Schur)
}

/// Visits every distinct permutation of the multiset in `letters[at..]`.
fn multiset_permutations(letters: &mut Vec<u32>, at: usize, f: &mut impl FnMut(&[u32])) {
    if at == letters.len() {
        f(letters);
        return;
    }
    let mut seen = Vec::new();
    for i in at..letters.len() {
        if seen.contains(&letters[i]) {
            continue;
        }
        seen.push(letters[i]);
        letters.swap(at, i);
        multiset_permutations(letters, at + 1, f);
        letters.swap(at, i);
    }
}

/// Swaps q and t in every coefficient (z <-> w on the representation).
pub fn swap_qt(f: &SymFunc1<FieldElem>) -> SymFunc1<FieldElem> {
    f.map_coeffs(|c| {
        FieldElem::new(c.num().swap_vars(), c.den().swap_vars()).expect("nonzero denominator")
    })
}

/// Sets q = t = 0 in every coefficient.
pub fn specialize_qt_zero(f: &SymFunc1<FieldElem>) -> Result<SymFunc1<FieldElem>> {
    let mut out = SymFunc1::zero_with_bound(f.basis(), f.degree_bound());
    for (key, c) in f.terms() {
        let p = c.poly()?;
        let c0 = p.coeff(0, 0);
        out.add_term(key.clone(), FieldElem::from_rat(&c0))?;
    }
    Ok(out)
}
