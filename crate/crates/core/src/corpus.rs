//! Deterministic group constructors, the shipped corpus and its file format.
//!
//! The file format is JSON: an array of objects with `label`, `degree`,
//! `generators` (0-based image arrays, in construction order) and an optional
//! string map `metadata`. The corpus uses the metadata keys `provenance`
//! (constructor call) and `primes` (comma-separated primes of interest).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{GroupError, Result};
use crate::group::{is_prime, prime_divisors, prime_power_base, Group, DEFAULT_ENUMERATION_CAP};
use crate::perm::Permutation;
use crate::psylow::{is_p_nilpotent, upper_p_series};
use crate::series::nilpotency_class;
use crate::subgroup::GroupExt;

fn build(label: impl Into<String>, degree: usize, gens: Vec<Vec<u32>>) -> Result<Arc<Group>> {
    let gens = gens
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    Group::generate(label, degree, gens, DEFAULT_ENUMERATION_CAP)
}

fn bad(msg: impl Into<String>) -> GroupError {
    GroupError::BadParameter(msg.into())
}

/// `C_n` on `n` points, generated by `(0 1 … n-1)`.
pub fn cyclic(n: usize) -> Result<Arc<Group>> {
    if n == 0 {
        return Err(bad("cyclic group needs n ≥ 1"));
    }
    let gens = if n == 1 {
        vec![]
    } else {
        vec![(0..n as u32).map(|i| (i + 1) % n as u32).collect()]
    };
    build(format!("C{n}"), n, gens)
}

/// `C_p^k` on `pk` points: one `p`-cycle per block.
pub fn elementary_abelian(p: u64, k: usize) -> Result<Arc<Group>> {
    if !is_prime(p) || k == 0 {
        return Err(bad(format!("elementary_abelian({p}, {k})")));
    }
    let p = p as u32;
    let degree = p as usize * k;
    let gens = (0..k as u32)
        .map(|b| {
            (0..degree as u32)
                .map(|x| {
                    if x / p == b {
                        b * p + (x % p + 1) % p
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    build(format!("C{p}^{k}"), degree, gens)
}

/// The dihedral group of order `2n` on `n` points (`n ≥ 3`): rotation
/// `i ↦ i+1`, reflection `i ↦ -i`.
pub fn dihedral(order: usize) -> Result<Arc<Group>> {
    if !order.is_multiple_of(2) || order < 6 {
        return Err(bad(format!("dihedral({order}) needs an even order ≥ 6")));
    }
    let n = (order / 2) as u32;
    let rot = (0..n).map(|i| (i + 1) % n).collect();
    let refl = (0..n).map(|i| (n - i) % n).collect();
    build(format!("D{order}"), n as usize, vec![rot, refl])
}

/// Generalized quaternion group of order 8 or 16, in its regular
/// representation. Point `i + 2m·j` stands for `a^i b^j`, where
/// `a^{2m} = 1`, `b² = a^m`, `b⁻¹ a b = a⁻¹`.
pub fn quaternion(order: usize) -> Result<Arc<Group>> {
    if order != 8 && order != 16 {
        return Err(bad(format!("quaternion({order}) supports 8 and 16")));
    }
    let two_m = (order / 2) as u32;
    let m = two_m / 2;
    let point = |i: u32, j: u32| (i % two_m) + two_m * j;
    let mut ra = vec![0; order];
    let mut rb = vec![0; order];
    for j in 0..2 {
        for i in 0..two_m {
            let x = point(i, j) as usize;
            ra[x] = if j == 0 {
                point(i + 1, 0)
            } else {
                point(i + two_m - 1, 1)
            };
            rb[x] = if j == 0 { point(i, 1) } else { point(i + m, 0) };
        }
    }
    build(format!("Q{order}"), order, vec![ra, rb])
}

/// The semidihedral group of order 16 as `{x ↦ ux + c mod 8 : u ∈ {1, 3}}`.
pub fn semidihedral16() -> Result<Arc<Group>> {
    let a = (0..8).map(|x| (x + 1) % 8).collect();
    let b = (0..8).map(|x| (3 * x) % 8).collect();
    build("SD16", 8, vec![a, b])
}

/// Extraspecial group of order `p³` for odd `p`.
///
/// Exponent `p`: unitriangular matrices acting on `F_p²` by
/// `(x, y) ↦ (x + ay + c, y + b)`, point `x + py`.
/// Exponent `p²`: `{x ↦ ux + c mod p² : u ∈ ⟨1 + p⟩}`.
pub fn extraspecial_p3(p: u64, exponent: u64) -> Result<Arc<Group>> {
    if !is_prime(p) || p == 2 {
        return Err(bad(format!("extraspecial_p3 needs an odd prime, got {p}")));
    }
    let q = p as u32;
    if exponent == p {
        let pt = |x: u32, y: u32| (x % q) + q * (y % q);
        let mut a = vec![0; (q * q) as usize];
        let mut b = vec![0; (q * q) as usize];
        for y in 0..q {
            for x in 0..q {
                a[pt(x, y) as usize] = pt(x + y, y);
                b[pt(x, y) as usize] = pt(x, y + 1);
            }
        }
        build(format!("{p}^1+2_exp{p}"), (q * q) as usize, vec![a, b])
    } else if exponent == p * p {
        let n = q * q;
        let a = (0..n).map(|x| (x + 1) % n).collect();
        let b = (0..n).map(|x| (x * (1 + q)) % n).collect();
        build(format!("{p}^1+2_exp{}", p * p), n as usize, vec![a, b])
    } else {
        Err(bad(format!(
            "extraspecial_p3 exponent must be {p} or {}",
            p * p
        )))
    }
}

/// `C_p ≀ C_p` on `p²` points: base generators are the `p` disjoint
/// `p`-cycles on the blocks `{ip, …, ip+p-1}`, the top generator shifts
/// block `i` to block `i+1`.
pub fn wreath_cpcp(p: u64) -> Result<Arc<Group>> {
    if !is_prime(p) {
        return Err(bad(format!("wreath_cpcp needs a prime, got {p}")));
    }
    let q = p as u32;
    let n = q * q;
    let mut gens: Vec<Vec<u32>> = (0..q)
        .map(|b| {
            (0..n)
                .map(|x| {
                    if x / q == b {
                        b * q + (x % q + 1) % q
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    gens.push((0..n).map(|x| ((x / q + 1) % q) * q + x % q).collect());
    build(format!("C{p}wrC{p}"), n as usize, gens)
}

/// `S_n` for `n ≤ 7`.
pub fn symmetric(n: usize) -> Result<Arc<Group>> {
    if n == 0 || n > 7 {
        return Err(bad(format!("symmetric({n}) supports 1..=7")));
    }
    let gens = match n {
        1 => vec![],
        2 => vec![vec![1, 0]],
        _ => vec![
            (0..n as u32).map(|i| (i + 1) % n as u32).collect(),
            (0..n as u32)
                .map(|i| match i {
                    0 => 1,
                    1 => 0,
                    x => x,
                })
                .collect(),
        ],
    };
    build(format!("S{n}"), n, gens)
}

/// `A_n` for `n ≤ 7`, generated by `(i i+1 i+2)`.
pub fn alternating(n: usize) -> Result<Arc<Group>> {
    if n == 0 || n > 7 {
        return Err(bad(format!("alternating({n}) supports 1..=7")));
    }
    let gens = (0..n.saturating_sub(2) as u32)
        .map(|i| {
            (0..n as u32)
                .map(|x| {
                    if x == i {
                        i + 1
                    } else if x == i + 1 {
                        i + 2
                    } else if x == i + 2 {
                        i
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    build(format!("A{n}"), n, gens)
}

/// `A × B` on the disjoint union of the point sets.
pub fn direct_product(a: &Arc<Group>, b: &Arc<Group>) -> Result<Arc<Group>> {
    let (da, db) = (a.degree() as u32, b.degree() as u32);
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(g.images().iter().copied().chain(da..da + db).collect());
    }
    for g in b.generators() {
        gens.push((0..da).chain(g.images().iter().map(|&x| x + da)).collect());
    }
    build(
        format!("{}x{}", a.label(), b.label()),
        (da + db) as usize,
        gens,
    )
}

/// `G` acting on itself by right multiplication.
pub fn regular_embedding(g: &Arc<Group>) -> Result<Arc<Group>> {
    let gens = g
        .generator_ids()
        .iter()
        .map(|&s| (0..g.order()).map(|x| g.mul(x, s) as u32).collect())
        .collect();
    build(format!("reg({})", g.label()), g.order(), gens)
}

/// Arithmetic in `F_q`, `q = p^k`, `k ≤ 3`; elements are encoded by their
/// base-`p` coefficient digits.
struct FiniteField {
    p: u32,
    k: u32,
    /// Monic modulus, low coefficients first (without the leading 1).
    modulus: Vec<u32>,
}

impl FiniteField {
    fn new(q: u64) -> Result<Self> {
        let p = prime_power_base(q).ok_or_else(|| bad(format!("{q} is not a prime power")))? as u32;
        let mut k = 0;
        let mut n = q;
        while n > 1 {
            n /= p as u64;
            k += 1;
        }
        if k > 3 {
            return Err(bad(format!("field of order {q} is not supported")));
        }
        if k == 1 {
            return Ok(Self {
                p,
                k,
                modulus: vec![0],
            });
        }
        // For degree 2 and 3, irreducible ⇔ no roots.
        let modulus = (0..p.pow(k))
            .map(|c| (0..k).map(|i| (c / p.pow(i)) % p).collect::<Vec<_>>())
            .find(|coeffs| {
                (0..p).all(|x| {
                    let mut v = 1u32;
                    for i in (0..k as usize).rev() {
                        v = (v * x + coeffs[i]) % p;
                    }
                    v != 0
                })
            })
            .expect("an irreducible polynomial exists");
        Ok(Self { p, k, modulus })
    }

    fn q(&self) -> u32 {
        self.p.pow(self.k)
    }

    fn digits(&self, x: u32) -> Vec<u32> {
        (0..self.k).map(|i| (x / self.p.pow(i)) % self.p).collect()
    }

    fn encode(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        self.encode(
            &x.iter()
                .zip(&y)
                .map(|(u, v)| (u + v) % self.p)
                .collect::<Vec<_>>(),
        )
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u32; 2 * k];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % self.p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c != 0 {
                prod[deg] = 0;
                for (i, &m) in self.modulus.iter().enumerate() {
                    let t = prod[deg - k + i] + self.p * self.p - c * m % self.p;
                    prod[deg - k + i] = t % self.p;
                }
            }
        }
        self.encode(&prod[..k])
    }

    fn primitive_element(&self) -> u32 {
        let q = self.q();
        (2..q.max(3))
            .chain(std::iter::once(1))
            .find(|&w| {
                let mut x = w;
                let mut ord = 1;
                while x != 1 {
                    x = self.mul(x, w);
                    ord += 1;
                }
                ord == q - 1
            })
            .expect("the multiplicative group is cyclic")
    }
}

/// `AGL(1, q)` on the `q` field elements: translations by a basis of `F_q`
/// over `F_p`, then multiplication by a primitive element.
pub fn affine_frobenius(q: u64) -> Result<Arc<Group>> {
    if q < 3 {
        return Err(bad(format!("affine_frobenius({q}) needs q ≥ 3")));
    }
    let f = FiniteField::new(q)?;
    let n = f.q();
    let mut gens: Vec<Vec<u32>> = (0..f.k)
        .map(|i| (0..n).map(|x| f.add(x, f.p.pow(i))).collect())
        .collect();
    let w = f.primitive_element();
    gens.push((0..n).map(|x| f.mul(x, w)).collect());
    build(format!("AGL(1,{q})"), n as usize, gens)
}

/// Right action of 2×2 matrices over `F_3` on the 8 nonzero row vectors;
/// vector `(x, y)` is point `x + 3y − 1`.
fn matrices_mod3(label: &str, mats: &[[[u32; 2]; 2]]) -> Result<Arc<Group>> {
    let gens = mats
        .iter()
        .map(|m| {
            (1..9u32)
                .map(|v| {
                    let (x, y) = (v % 3, v / 3);
                    let nx = (x * m[0][0] + y * m[1][0]) % 3;
                    let ny = (x * m[0][1] + y * m[1][1]) % 3;
                    nx + 3 * ny - 1
                })
                .collect()
        })
        .collect();
    build(label, 8, gens)
}

/// `SL(2, 3)` on the nonzero vectors of `F_3²`.
pub fn sl23() -> Result<Arc<Group>> {
    matrices_mod3("SL(2,3)", &[[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
}

/// `GL(2, 3)` on the nonzero vectors of `F_3²`.
pub fn gl23() -> Result<Arc<Group>> {
    matrices_mod3(
        "GL(2,3)",
        &[[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[2, 0], [0, 1]]],
    )
}

/// A corpus group with its primes of interest and recomputed tags.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub group: Arc<Group>,
    pub primes: Vec<u64>,
    pub tags: BTreeSet<String>,
    pub provenance: String,
    /// Metadata keys other than `provenance` and `primes`, kept for saving.
    pub extra: BTreeMap<String, String>,
}

impl CorpusEntry {
    pub fn new(group: Arc<Group>, primes: Vec<u64>, provenance: impl Into<String>) -> Self {
        let tags = compute_tags(&group, &primes);
        Self {
            group,
            primes,
            tags,
            provenance: provenance.into(),
            extra: BTreeMap::new(),
        }
    }

    pub fn label(&self) -> &str {
        self.group.label()
    }

    /// `Some(p)` when the provenance is `wreath_cpcp(p)`.
    pub fn wreath_prime(&self) -> Option<u64> {
        self.provenance
            .strip_prefix("wreath_cpcp(")?
            .strip_suffix(')')?
            .parse()
            .ok()
    }
}

/// Tags derived from the group itself; never read from input.
pub fn compute_tags(g: &Arc<Group>, primes: &[u64]) -> BTreeSet<String> {
    let mut tags = BTreeSet::new();
    if g.is_abelian() {
        tags.insert("abelian".to_string());
    }
    let class = nilpotency_class(g);
    if class.is_some() {
        tags.insert("nilpotent".to_string());
    }
    if let Some(p) = g.prime_of_p_group() {
        tags.insert(format!("{p}-group"));
        tags.insert("p-group".to_string());
        let k = (1..)
            .take_while(|&k| (p as usize).pow(k) <= g.order())
            .count();
        if k >= 3 && class == Some(k - 1) {
            tags.insert("maximal-class".to_string());
        }
        let whole = g.whole_subgroup();
        if whole.derived().is_subgroup_of(&whole.power(2 * p)) {
            tags.insert("powerful".to_string());
        }
    }
    for &p in primes {
        if g.is_p_group(p) {
            tags.insert(format!("{p}-solvable"));
            tags.insert(format!("{p}-nilpotent"));
            continue;
        }
        if let Ok(series) = upper_p_series(g, p) {
            if series.p_solvable {
                tags.insert(format!("{p}-solvable"));
            }
        }
        if is_p_nilpotent(g, p) {
            tags.insert(format!("{p}-nilpotent"));
        }
    }
    tags
}

/// The shipped corpus, built from the constructors.
pub fn standard_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut add = |g: Arc<Group>, label: &str, primes: &[u64], prov: &str| {
        out.push(CorpusEntry::new(g.relabeled(label), primes.to_vec(), prov));
    };

    // p-groups
    add(wreath_cpcp(2)?, "C2wrC2", &[2], "wreath_cpcp(2)");
    add(wreath_cpcp(3)?, "C3wrC3", &[3], "wreath_cpcp(3)");
    add(wreath_cpcp(5)?, "C5wrC5", &[5], "wreath_cpcp(5)");
    add(dihedral(8)?, "D8", &[2], "dihedral(8)");
    add(quaternion(8)?, "Q8", &[2], "quaternion(8)");
    add(dihedral(16)?, "D16", &[2], "dihedral(16)");
    add(quaternion(16)?, "Q16", &[2], "quaternion(16)");
    add(semidihedral16()?, "SD16", &[2], "semidihedral(16)");
    add(
        elementary_abelian(2, 3)?,
        "C2^3",
        &[2],
        "elementary_abelian(2,3)",
    );
    add(
        direct_product(&cyclic(4)?, &cyclic(2)?)?,
        "C4xC2",
        &[2],
        "direct_product(cyclic(4),cyclic(2))",
    );
    add(
        direct_product(&cyclic(4)?, &cyclic(4)?)?,
        "C4xC4",
        &[2],
        "direct_product(cyclic(4),cyclic(4))",
    );
    add(
        direct_product(&dihedral(8)?, &cyclic(2)?)?,
        "D8xC2",
        &[2],
        "direct_product(dihedral(8),cyclic(2))",
    );
    add(
        direct_product(&quaternion(8)?, &cyclic(4)?)?,
        "Q8xC4",
        &[2],
        "direct_product(quaternion(8),cyclic(4))",
    );
    add(
        extraspecial_p3(3, 3)?,
        "3^1+2_exp3",
        &[3],
        "extraspecial_p3(3,3)",
    );
    add(
        extraspecial_p3(3, 9)?,
        "3^1+2_exp9",
        &[3],
        "extraspecial_p3(3,9)",
    );
    add(
        direct_product(&cyclic(9)?, &cyclic(3)?)?,
        "C9xC3",
        &[3],
        "direct_product(cyclic(9),cyclic(3))",
    );
    add(
        direct_product(&extraspecial_p3(3, 3)?, &cyclic(3)?)?,
        "3^1+2_exp3xC3",
        &[3],
        "direct_product(extraspecial_p3(3,3),cyclic(3))",
    );
    add(
        direct_product(&wreath_cpcp(3)?, &cyclic(3)?)?,
        "C3wrC3xC3",
        &[3],
        "direct_product(wreath_cpcp(3),cyclic(3))",
    );
    add(
        extraspecial_p3(5, 5)?,
        "5^1+2_exp5",
        &[5],
        "extraspecial_p3(5,5)",
    );
    add(
        elementary_abelian(5, 2)?,
        "C5^2",
        &[5],
        "elementary_abelian(5,2)",
    );

    // groups with several primes
    add(symmetric(3)?, "S3", &[2, 3], "symmetric(3)");
    add(symmetric(4)?, "S4", &[2, 3], "symmetric(4)");
    add(alternating(4)?, "A4", &[2, 3], "alternating(4)");
    add(sl23()?, "SL(2,3)", &[2, 3], "sl23()");
    add(gl23()?, "GL(2,3)", &[2, 3], "gl23()");
    add(alternating(5)?, "A5", &[2, 3, 5], "alternating(5)");
    add(symmetric(5)?, "S5", &[2, 3, 5], "symmetric(5)");
    add(
        affine_frobenius(5)?,
        "AGL(1,5)",
        &[2, 5],
        "affine_frobenius(5)",
    );
    add(
        affine_frobenius(7)?,
        "AGL(1,7)",
        &[2, 3, 7],
        "affine_frobenius(7)",
    );
    add(
        affine_frobenius(8)?,
        "AGL(1,8)",
        &[2, 7],
        "affine_frobenius(8)",
    );
    add(
        affine_frobenius(9)?,
        "AGL(1,9)",
        &[2, 3],
        "affine_frobenius(9)",
    );
    add(
        affine_frobenius(25)?,
        "AGL(1,25)",
        &[2, 3, 5],
        "affine_frobenius(25)",
    );
    add(
        direct_product(&dihedral(8)?, &cyclic(3)?)?,
        "D8xC3",
        &[2, 3],
        "direct_product(dihedral(8),cyclic(3))",
    );
    add(
        direct_product(&quaternion(8)?, &cyclic(3)?)?,
        "Q8xC3",
        &[2, 3],
        "direct_product(quaternion(8),cyclic(3))",
    );
    add(
        direct_product(&symmetric(3)?, &cyclic(5)?)?,
        "S3xC5",
        &[2, 3, 5],
        "direct_product(symmetric(3),cyclic(5))",
    );
    add(
        direct_product(&alternating(4)?, &cyclic(2)?)?,
        "A4xC2",
        &[2, 3],
        "direct_product(alternating(4),cyclic(2))",
    );
    add(
        direct_product(&symmetric(3)?, &symmetric(3)?)?,
        "S3xS3",
        &[2, 3],
        "direct_product(symmetric(3),symmetric(3))",
    );
    add(
        direct_product(&symmetric(4)?, &cyclic(5)?)?,
        "S4xC5",
        &[2, 3, 5],
        "direct_product(symmetric(4),cyclic(5))",
    );
    add(
        regular_embedding(&symmetric(3)?)?,
        "reg(S3)",
        &[2, 3],
        "regular_embedding(symmetric(3))",
    );
    add(cyclic(6)?, "C6", &[2, 3], "cyclic(6)");
    Ok(out)
}

/// A group document of the file format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub label: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

#[derive(Error, Debug)]
pub enum CorpusError {
    #[error("{path}: line {line}, column {column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: entry {entry} ({label}), field `{field}`: {message}")]
    Field {
        path: String,
        entry: usize,
        label: String,
        field: String,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl GroupDoc {
    pub fn from_entry(e: &CorpusEntry) -> Self {
        let mut metadata = e.extra.clone();
        metadata.insert("provenance".into(), e.provenance.clone());
        let primes: Vec<String> = e.primes.iter().map(u64::to_string).collect();
        metadata.insert("primes".into(), primes.join(","));
        Self {
            label: e.group.label().to_string(),
            degree: e.group.degree(),
            generators: e
                .group
                .generators()
                .iter()
                .map(|g| g.images().to_vec())
                .collect(),
            metadata,
        }
    }
}

/// Renders group documents with one generator array per line. The output is
/// a function of the documents alone.
pub fn render(docs: &[GroupDoc]) -> String {
    let mut out = String::from("[\n");
    for (i, d) in docs.iter().enumerate() {
        let _ = writeln!(out, "  {{");
        let _ = writeln!(
            out,
            "    \"label\": {},",
            serde_json::to_string(&d.label).unwrap()
        );
        let _ = writeln!(out, "    \"degree\": {},", d.degree);
        if d.generators.is_empty() {
            let _ = write!(out, "    \"generators\": []");
        } else {
            let _ = writeln!(out, "    \"generators\": [");
            for (j, g) in d.generators.iter().enumerate() {
                let sep = if j + 1 < d.generators.len() { "," } else { "" };
                let _ = writeln!(out, "      {}{sep}", serde_json::to_string(g).unwrap());
            }
            let _ = write!(out, "    ]");
        }
        if !d.metadata.is_empty() {
            let _ = write!(
                out,
                ",\n    \"metadata\": {}",
                serde_json::to_string(&d.metadata).unwrap()
            );
        }
        let sep = if i + 1 < docs.len() { "," } else { "" };
        let _ = writeln!(out, "\n  }}{sep}");
    }
    out.push_str("]\n");
    out
}

pub fn save(entries: &[CorpusEntry], path: &Path) -> Result<(), CorpusError> {
    let docs: Vec<GroupDoc> = entries.iter().map(GroupDoc::from_entry).collect();
    std::fs::write(path, render(&docs)).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load(path: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, &path.display().to_string())
}

/// Parses a corpus document; `origin` names it in diagnostics.
pub fn parse(text: &str, origin: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let docs: Vec<GroupDoc> = serde_json::from_str(text).map_err(|e| CorpusError::Syntax {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    docs.into_iter()
        .enumerate()
        .map(|(i, d)| entry_from_doc(d, i, origin))
        .collect()
}

fn entry_from_doc(doc: GroupDoc, entry: usize, origin: &str) -> Result<CorpusEntry, CorpusError> {
    let field_err = |field: String, message: String| CorpusError::Field {
        path: origin.to_string(),
        entry,
        label: doc.label.clone(),
        field,
        message,
    };
    let mut gens = Vec::with_capacity(doc.generators.len());
    for (j, images) in doc.generators.iter().enumerate() {
        if images.len() != doc.degree {
            return Err(field_err(
                format!("generators[{j}]"),
                format!(
                    "has length {}, expected degree {}",
                    images.len(),
                    doc.degree
                ),
            ));
        }
        let p = Permutation::from_images(images.clone())
            .map_err(|e| field_err(format!("generators[{j}]"), e.to_string()))?;
        gens.push(p);
    }
    let group = Group::generate(doc.label.clone(), doc.degree, gens, DEFAULT_ENUMERATION_CAP)
        .map_err(|e| field_err("generators".into(), e.to_string()))?;

    let mut extra = doc.metadata.clone();
    // Tags are derived data; a listing may carry them but they are recomputed.
    extra.remove("tags");
    let provenance = extra
        .remove("provenance")
        .unwrap_or_else(|| "file".to_string());
    let primes = match extra.remove("primes") {
        Some(s) if !s.trim().is_empty() => s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .ok()
                    .filter(|&p| is_prime(p))
                    .ok_or_else(|| {
                        field_err("metadata.primes".into(), format!("`{t}` is not a prime"))
                    })
            })
            .collect::<Result<Vec<_>, _>>()?,
        _ => prime_divisors(group.order() as u64),
    };
    let tags = compute_tags(&group, &primes);
    Ok(CorpusEntry {
        group,
        primes,
        tags,
        provenance,
        extra,
    })
}

/// The shipped corpus file (`crates/core/data/corpus.json`), embedded at
/// build time.
pub const SHIPPED_CORPUS: &str = include_str!("../data/corpus.json");

pub fn shipped_corpus() -> Result<Vec<CorpusEntry>, CorpusError> {
    parse(SHIPPED_CORPUS, "<shipped corpus>")
}

/// Looks a label up in a list of entries.
pub fn find<'a>(entries: &'a [CorpusEntry], label: &str) -> Option<&'a CorpusEntry> {
    entries.iter().find(|e| e.label() == label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    #[test]
    fn orders_of_constructors() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(elementary_abelian(3, 2).unwrap().order(), 9);
        assert_eq!(dihedral(8).unwrap().order(), 8);
        assert_eq!(quaternion(8).unwrap().order(), 8);
        assert_eq!(quaternion(16).unwrap().order(), 16);
        assert_eq!(semidihedral16().unwrap().order(), 16);
        assert_eq!(extraspecial_p3(3, 3).unwrap().exponent(), 3);
        assert_eq!(extraspecial_p3(3, 9).unwrap().exponent(), 9);
        assert_eq!(extraspecial_p3(5, 5).unwrap().order(), 125);
        assert_eq!(wreath_cpcp(2).unwrap().order(), 8);
        assert_eq!(wreath_cpcp(3).unwrap().order(), 81);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(affine_frobenius(7).unwrap().order(), 42);
        assert_eq!(affine_frobenius(8).unwrap().order(), 56);
        assert_eq!(affine_frobenius(9).unwrap().order(), 72);
        assert_eq!(affine_frobenius(25).unwrap().order(), 600);
        assert_eq!(sl23().unwrap().order(), 24);
        assert_eq!(gl23().unwrap().order(), 48);
        assert_eq!(
            regular_embedding(&symmetric(3).unwrap()).unwrap().degree(),
            6
        );
    }

    #[test]
    fn bad_parameters() {
        assert!(dihedral(4).is_err());
        assert!(quaternion(32).is_err());
        assert!(extraspecial_p3(2, 4).is_err());
        assert!(symmetric(8).is_err());
        assert!(wreath_cpcp(4).is_err());
        assert!(affine_frobenius(6).is_err());
    }

    #[test]
    fn wreath_of_c2_is_dihedral() {
        assert!(is_isomorphic(&wreath_cpcp(2).unwrap(), &dihedral(8).unwrap()).unwrap());
        assert!(!is_isomorphic(&dihedral(8).unwrap(), &quaternion(8).unwrap()).unwrap());
    }

    #[test]
    fn constructors_are_deterministic() {
        let a = affine_frobenius(25).unwrap();
        let b = affine_frobenius(25).unwrap();
        assert_eq!(a.generators(), b.generators());
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion(8).unwrap();
        assert_eq!(q.order_profile(), vec![(1, 1), (2, 1), (4, 6)]);
        let sl = sl23().unwrap();
        assert_eq!(
            crate::psylow::sylow_p(&sl, 2).to_group("P").order_profile(),
            q.order_profile()
        );
    }

    #[test]
    fn parse_rejects_non_bijection() {
        let text = r#"[{"label": "bad", "degree": 3, "generators": [[0, 0, 1]]}]"#;
        let err = parse(text, "inline").unwrap_err();
        assert!(
            matches!(err, CorpusError::Field { ref field, .. } if field == "generators[0]"),
            "{err}"
        );
        let err = parse("[{\"label\": 1}]", "inline").unwrap_err();
        assert!(matches!(err, CorpusError::Syntax { line: 1, .. }), "{err}");
    }
}
