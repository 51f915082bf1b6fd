//! Group algebras of finite groups given by Cayley tables.
//!
//! Functions on the group carry counting measure: `‖f‖₁ = Σ|f(g)|` and the
//! Fourier transform is an unnormalized sum, so Parseval carries a `1/m`.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{OpError, Result};
use crate::linalg::{Matrix, C64, ONE, ZERO};
use crate::structure::{characters, generate_star_algebra};

#[derive(Debug, Deserialize)]
struct GroupTableJson {
    order: usize,
    mult: Vec<Vec<usize>>,
    #[serde(default)]
    identity: Option<usize>,
    #[serde(default)]
    inverse: Option<Vec<usize>>,
    #[serde(default)]
    cyclic_factors: Option<Vec<usize>>,
}

/// A finite group as a validated multiplication table on `0..order`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GroupTableJson")]
pub struct GroupTable {
    order: usize,
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    /// Set when the table is `ℤ_{n₁} × … × ℤ_{n_k}` in mixed-radix order.
    #[serde(skip_serializing_if = "Option::is_none")]
    cyclic_factors: Option<Vec<usize>>,
}

impl TryFrom<GroupTableJson> for GroupTable {
    type Error = OpError;

    fn try_from(raw: GroupTableJson) -> Result<Self> {
        let table = GroupTable::from_table(raw.order, raw.mult)?;
        if raw.identity.is_some_and(|e| e != table.identity) {
            return Err(OpError::InvalidGroup("stated identity does not match the table".into()));
        }
        if raw.inverse.as_ref().is_some_and(|inv| *inv != table.inverse) {
            return Err(OpError::InvalidGroup("stated inverses do not match the table".into()));
        }
        match raw.cyclic_factors {
            Some(factors) => {
                let product = GroupTable::product_of_cyclics(&factors)?;
                if product.mult != table.mult {
                    return Err(OpError::InvalidGroup("table is not the stated product of cyclic groups".into()));
                }
                Ok(product)
            }
            None => Ok(table),
        }
    }
}

impl GroupTable {
    /// Validates a multiplication table: entries in range, an identity,
    /// inverses, and associativity on all triples.
    pub fn from_table(order: usize, mult: Vec<Vec<usize>>) -> Result<Self> {
        if order == 0 {
            return Err(OpError::InvalidGroup("order must be positive".into()));
        }
        if mult.len() != order || mult.iter().any(|row| row.len() != order) {
            return Err(OpError::InvalidGroup(format!("table must be {order}×{order}")));
        }
        if mult.iter().flatten().any(|&x| x >= order) {
            return Err(OpError::InvalidGroup("table entry out of range".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mult[e][g] == g && mult[g][e] == g))
            .ok_or_else(|| OpError::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(order);
        for g in 0..order {
            let inv = (0..order)
                .find(|&h| mult[g][h] == identity && mult[h][g] == identity)
                .ok_or_else(|| OpError::InvalidGroup(format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(OpError::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(GroupTable { order, mult, identity, inverse, cyclic_factors: None })
    }

    /// `ℤ_n` with `g·h = g + h mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        GroupTable::product_of_cyclics(&[n])
    }

    /// `ℤ_{n₁} × … × ℤ_{n_k}`, elements indexed in mixed radix with the first
    /// factor most significant.
    pub fn product_of_cyclics(factors: &[usize]) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(OpError::InvalidGroup("cyclic factors must be positive".into()));
        }
        let order: usize = factors.iter().product();
        let digits = |mut g: usize| -> Vec<usize> {
            let mut d = vec![0; factors.len()];
            for (slot, &n) in d.iter_mut().zip(factors).rev() {
                *slot = g % n;
                g /= n;
            }
            d
        };
        let index = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, &n)| acc * n + x);
        let mult: Vec<Vec<usize>> = (0..order)
            .map(|g| {
                let dg = digits(g);
                (0..order)
                    .map(|h| {
                        let sum: Vec<usize> =
                            dg.iter().zip(digits(h)).zip(factors).map(|((a, b), n)| (a + b) % n).collect();
                        index(&sum)
                    })
                    .collect()
            })
            .collect();
        let mut table = GroupTable::from_table(order, mult)?;
        table.cyclic_factors = Some(factors.to_vec());
        Ok(table)
    }

    /// `S₃` as permutations of `{0, 1, 2}` in lexicographic order, with
    /// `(στ)(x) = σ(τ(x))`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let mult = perms
            .iter()
            .map(|s| perms.iter().map(|t| find([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        GroupTable::from_table(6, mult).expect("S₃ table is valid")
    }

    /// The quaternion group with elements `1, −1, i, −i, j, −j, k, −k`.
    pub fn quaternion() -> Self {
        // unit products among 1, i, j, k as (sign, unit)
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let mult = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (neg, unit) = UNIT[a / 2][b / 2];
                        let negative = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
                        2 * unit + usize::from(negative)
                    })
                    .collect()
            })
            .collect();
        GroupTable::from_table(8, mult).expect("Q₈ table is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mult[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn cyclic_factors(&self) -> Option<&[usize]> {
        self.cyclic_factors.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..self.order).all(|h| self.mult[g][h] == self.mult[h][g]))
    }
}

/// A function `G → ℂ`, an element of the group algebra `ℂG`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    group: Arc<GroupTable>,
    values: Vec<C64>,
}

impl GroupFunction {
    pub fn new(group: Arc<GroupTable>, values: Vec<C64>) -> Result<Self> {
        if values.len() != group.order {
            return Err(OpError::DimensionMismatch { expected: group.order, actual: values.len() });
        }
        Ok(GroupFunction { group, values })
    }

    /// The point mass `δ_g`.
    pub fn delta(group: Arc<GroupTable>, g: usize) -> Result<Self> {
        if g >= group.order {
            return Err(OpError::InvalidInput(format!("element {g} out of range")));
        }
        let mut values = vec![ZERO; group.order];
        values[g] = ONE;
        Ok(GroupFunction { group, values })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &GroupFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

fn same_group(f: &GroupFunction, k: &GroupFunction) -> Result<()> {
    if Arc::ptr_eq(&f.group, &k.group) || f.group == k.group {
        Ok(())
    } else {
        Err(OpError::GroupMismatch)
    }
}

/// `(f ∗ k)(g) = Σ_h f(h)·k(h⁻¹g)`.
pub fn convolve(f: &GroupFunction, k: &GroupFunction) -> Result<GroupFunction> {
    same_group(f, k)?;
    let group = &f.group;
    let mut values = vec![ZERO; group.order];
    for (h, &fh) in f.values.iter().enumerate() {
        if fh == ZERO {
            continue;
        }
        // h·x = g for x = h⁻¹g
        for (x, &kx) in k.values.iter().enumerate() {
            values[group.mul(h, x)] += fh * kx;
        }
    }
    Ok(GroupFunction { group: f.group.clone(), values })
}

/// `f*(g) = conj(f(g⁻¹))`.
pub fn involute(f: &GroupFunction) -> GroupFunction {
    let values = (0..f.group.order).map(|g| f.values[f.group.inverse(g)].conj()).collect();
    GroupFunction { group: f.group.clone(), values }
}

/// `λ(f)` on `ℓ²(G)` in the point-mass basis: `λ(f)[x][h] = f(x·h⁻¹)`.
pub fn left_regular(f: &GroupFunction) -> Matrix {
    let group = &f.group;
    Matrix::from_fn(group.order, |x, h| f.values[group.mul(x, group.inverse(h))])
}

/// A homomorphism `G → 𝕋`, by its values on the elements.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupCharacter {
    pub values: Vec<C64>,
}

fn phase(z: C64) -> f64 {
    let p = z.arg().rem_euclid(2.0 * PI);
    // snap rounding noise so that equal phases compare equal
    let snapped = (p * 1e9).round() / 1e9;
    if snapped >= 2.0 * PI - 1e-9 {
        0.0
    } else {
        snapped
    }
}

fn sort_characters(chars: &mut [GroupCharacter]) {
    chars.sort_by(|x, y| {
        for (a, b) in x.values.iter().zip(&y.values) {
            let ord = phase(*a).total_cmp(&phase(*b));
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    });
}

fn require_abelian(group: &GroupTable) -> Result<()> {
    if group.is_abelian() {
        Ok(())
    } else {
        Err(OpError::NotAbelian)
    }
}

/// The dual group, from the characters of the commutative algebra `λ(ℂG)`,
/// sorted lexicographically by the phases `arg χ(g) ∈ [0, 2π)` along the
/// element order.
pub fn pontryagin_characters(group: &Arc<GroupTable>, cfg: &ToleranceConfig) -> Result<Vec<GroupCharacter>> {
    require_abelian(group)?;
    let deltas: Vec<Matrix> = (0..group.order)
        .map(|g| GroupFunction::delta(group.clone(), g).map(|d| left_regular(&d)))
        .collect::<Result<_>>()?;
    let alg = generate_star_algebra(&deltas, cfg)?;
    let omegas = characters(&alg, cfg)?;
    let mut chars: Vec<GroupCharacter> = omegas
        .iter()
        .map(|w| GroupCharacter { values: deltas.iter().map(|d| w.apply(&alg, d)).collect() })
        .collect();
    sort_characters(&mut chars);
    Ok(chars)
}

/// Characters of a product of cyclic groups from the exponential formula
/// `χ_k(g) = Π exp(2πi·k_j·g_j/n_j)`, in the same order as
/// [`pontryagin_characters`].
pub fn explicit_characters(group: &GroupTable) -> Result<Vec<GroupCharacter>> {
    let factors = group
        .cyclic_factors()
        .ok_or_else(|| OpError::InvalidGroup("group is not presented as a product of cyclic groups".into()))?;
    let digits = |mut g: usize| -> Vec<usize> {
        let mut d = vec![0; factors.len()];
        for (slot, &n) in d.iter_mut().zip(factors).rev() {
            *slot = g % n;
            g /= n;
        }
        d
    };
    let mut chars: Vec<GroupCharacter> = (0..group.order)
        .map(|k| {
            let dk = digits(k);
            let values = (0..group.order)
                .map(|g| {
                    let turns: f64 =
                        digits(g).iter().zip(&dk).zip(factors).map(|((&a, &b), &n)| (a * b % n) as f64 / n as f64).sum();
                    C64::from_polar(1.0, 2.0 * PI * turns)
                })
                .collect();
            GroupCharacter { values }
        })
        .collect();
    sort_characters(&mut chars);
    Ok(chars)
}

/// `f̂(ρ) = Σ_g f(g)·conj(ρ(g))` over the given characters.
pub fn fourier_with(f: &GroupFunction, chars: &[GroupCharacter]) -> Vec<C64> {
    chars.iter().map(|rho| f.values.iter().zip(&rho.values).map(|(a, r)| a * r.conj()).sum()).collect()
}

/// Fourier transform over the dual group in [`pontryagin_characters`] order.
pub fn fourier_transform(f: &GroupFunction, cfg: &ToleranceConfig) -> Result<Vec<C64>> {
    let chars = pontryagin_characters(&f.group, cfg)?;
    Ok(fourier_with(f, &chars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn func(group: &Arc<GroupTable>, values: &[C64]) -> GroupFunction {
        GroupFunction::new(group.clone(), values.to_vec()).unwrap()
    }

    #[test]
    fn constructors_validate() {
        assert_eq!(GroupTable::cyclic(5).unwrap().order(), 5);
        let s3 = GroupTable::symmetric3();
        assert!(!s3.is_abelian());
        let q8 = GroupTable::quaternion();
        assert!(!q8.is_abelian());
        // i·i = −1 and i·j = k
        assert_eq!(q8.mul(2, 2), 1);
        assert_eq!(q8.mul(2, 4), 6);
        assert_eq!(q8.mul(4, 2), 7);
        assert!(GroupTable::product_of_cyclics(&[2, 2]).unwrap().is_abelian());
    }

    #[test]
    fn invalid_tables_are_rejected() {
        assert!(GroupTable::from_table(2, vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::from_table(2, vec![vec![0, 2], vec![1, 0]]).is_err());
        assert!(GroupTable::from_table(0, vec![]).is_err());
    }

    #[test]
    fn table_json_round_trip() {
        let z3 = GroupTable::cyclic(3).unwrap();
        let text = serde_json::to_string(&z3).unwrap();
        let back: GroupTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, z3);
        let plain: GroupTable = serde_json::from_str(r#"{"order":2,"mult":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(plain.inverse(1), 1);
        assert!(serde_json::from_str::<GroupTable>(r#"{"order":2,"mult":[[0,1],[1,0]],"identity":1}"#).is_err());
    }

    #[test]
    fn convolution_examples() {
        let z2 = Arc::new(GroupTable::cyclic(2).unwrap());
        let f = func(&z2, &[ONE, ONE]);
        assert_eq!(convolve(&f, &f).unwrap().values(), &[ONE * 2.0, ONE * 2.0]);
        let s3 = Arc::new(GroupTable::symmetric3());
        let g = func(&s3, &[ONE, I, ZERO, ONE * 2.0, -ONE, ZERO]);
        let e = GroupFunction::delta(s3.clone(), s3.identity()).unwrap();
        assert_eq!(convolve(&e, &g).unwrap(), g);
        assert_eq!(convolve(&g, &e).unwrap(), g);
        for a in 0..6 {
            for b in 0..6 {
                let da = GroupFunction::delta(s3.clone(), a).unwrap();
                let db = GroupFunction::delta(s3.clone(), b).unwrap();
                let want = GroupFunction::delta(s3.clone(), s3.mul(a, b)).unwrap();
                assert_eq!(convolve(&da, &db).unwrap(), want);
            }
        }
    }

    #[test]
    fn convolution_rejects_mixed_groups() {
        let z2 = Arc::new(GroupTable::cyclic(2).unwrap());
        let z3 = Arc::new(GroupTable::cyclic(3).unwrap());
        let f = GroupFunction::delta(z2, 0).unwrap();
        let k = GroupFunction::delta(z3, 0).unwrap();
        assert_eq!(convolve(&f, &k).unwrap_err(), OpError::GroupMismatch);
    }

    #[test]
    fn involution_examples() {
        let z3 = Arc::new(GroupTable::cyclic(3).unwrap());
        let f = func(&z3, &[ZERO, I, ZERO]);
        assert_eq!(involute(&f).values(), &[ZERO, ZERO, -I]);
        let d = GroupFunction::delta(z3.clone(), 1).unwrap();
        assert_eq!(involute(&d), GroupFunction::delta(z3.clone(), 2).unwrap());
        assert_eq!(involute(&involute(&f)), f);
    }

    #[test]
    fn left_regular_examples() {
        let z2 = Arc::new(GroupTable::cyclic(2).unwrap());
        let f = func(&z2, &[C64::new(3.0, 0.0), C64::new(5.0, 0.0)]);
        assert_eq!(left_regular(&f), Matrix::from_real_rows(&[[3.0, 5.0], [5.0, 3.0]]));
        let s3 = Arc::new(GroupTable::symmetric3());
        assert_eq!(left_regular(&GroupFunction::delta(s3.clone(), 0).unwrap()), Matrix::identity(6));
        let l = left_regular(&GroupFunction::delta(s3.clone(), 3).unwrap());
        assert!((&l.adjoint() * &l).approx_eq(&Matrix::identity(6), 0.0));
    }

    #[test]
    fn characters_of_small_groups() {
        let z2 = Arc::new(GroupTable::cyclic(2).unwrap());
        let chars = pontryagin_characters(&z2, &cfg()).unwrap();
        assert_eq!(chars.len(), 2);
        assert!((chars[0].values[1] - ONE).norm() < 1e-12 && (chars[1].values[1] + ONE).norm() < 1e-12);

        let z3 = Arc::new(GroupTable::cyclic(3).unwrap());
        let chars = pontryagin_characters(&z3, &cfg()).unwrap();
        let omega = C64::from_polar(1.0, 2.0 * PI / 3.0);
        for (k, chi) in chars.iter().enumerate() {
            for (g, value) in chi.values.iter().enumerate() {
                assert!((value - omega.powu((g * k) as u32)).norm() < 1e-10);
            }
        }

        let klein = Arc::new(GroupTable::product_of_cyclics(&[2, 2]).unwrap());
        let chars = pontryagin_characters(&klein, &cfg()).unwrap();
        let explicit = explicit_characters(&klein).unwrap();
        assert_eq!(chars.len(), 4);
        for (a, b) in chars.iter().zip(&explicit) {
            for (x, y) in a.values.iter().zip(&b.values) {
                assert!((x - y).norm() < 1e-10 && x.im.abs() < 1e-10);
            }
        }
        let s3 = Arc::new(GroupTable::symmetric3());
        assert_eq!(pontryagin_characters(&s3, &cfg()).unwrap_err(), OpError::NotAbelian);
    }

    #[test]
    fn fourier_examples() {
        let z4 = Arc::new(GroupTable::cyclic(4).unwrap());
        let e = GroupFunction::delta(z4.clone(), 0).unwrap();
        for v in fourier_transform(&e, &cfg()).unwrap() {
            assert!((v - ONE).norm() < 1e-12);
        }
        let g = GroupFunction::delta(z4.clone(), 1).unwrap();
        let hat = fourier_transform(&g, &cfg()).unwrap();
        for (k, v) in hat.iter().enumerate() {
            assert!((v - C64::from_polar(1.0, -2.0 * PI * k as f64 / 4.0)).norm() < 1e-10);
        }
        let f = func(&z4, &[ONE, C64::new(0.5, -1.0), ZERO, C64::new(2.0, 0.25)]);
        let hat = fourier_transform(&f, &cfg()).unwrap();
        let energy: f64 = hat.iter().map(|z| z.norm_sqr()).sum::<f64>() / 4.0;
        assert!((energy - f.l2_norm().powi(2)).abs() < 1e-12);
    }
}
