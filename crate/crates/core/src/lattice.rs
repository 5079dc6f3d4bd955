//! Lattice points of the simplex `Δ(a) = { x in Z^n : x_i >= 0, sum x_i/a_i < κ/2 }`
//! and of the parallelepiped `P = [0, a_1 - 1] x ... x [0, a_n - 1]`.
//!
//! All comparisons run on the integer rescaling `Q(x) = 2A q(x) = u + sum 2 b_i x_i`
//! of `q(x) = sum (x_i + 1/2)/a_i`, which is exact. The parallelepiped is
//! walked row by row: every coordinate except the one with the largest `a_i`
//! is enumerated, and along the remaining axis `Q` is an arithmetic
//! progression, so each row is counted with a few integer divisions.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::brieskorn::BrieskornData;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Number of parallelepiped points with `q` strictly inside `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalCount {
    pub lo: Rational,
    pub hi: Rational,
    pub count: u64,
}

/// Simplex count, Mordell sum and the distribution of `q` over `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCensus {
    /// `#Δ(a)`, by direct enumeration.
    #[serde(rename = "C")]
    pub c: u64,
    /// `sum_P (r(q) - 1)(r(q) - 2)`; should equal `4C`.
    pub mordell_value: i64,
    /// Open intervals partitioning `(0, n)` at half-integers (`n = 3`) or
    /// integers (`n = 4`).
    pub census: Vec<IntervalCount>,
    /// Points of `P` with `2 q(p)` an integer. These are the only points that
    /// can sit on a cut, so they are missing from `census`.
    pub half_integer_hits: Vec<Vec<u64>>,
}

impl LatticeCensus {
    /// `N_(lo,hi)` for one of the census intervals.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> Option<u64> {
        self.census
            .iter()
            .find(|iv| &iv.lo == lo && &iv.hi == hi)
            .map(|iv| iv.count)
    }

    pub fn first(&self) -> u64 {
        self.census.first().map_or(0, |iv| iv.count)
    }

    pub fn last(&self) -> u64 {
        self.census.last().map_or(0, |iv| iv.count)
    }

    /// Every violated cross-check, as a human-readable line; empty when all hold.
    pub fn violations(&self, data: &BrieskornData) -> Vec<String> {
        let mut out = Vec::new();
        if self.mordell_value != 4 * self.c as i64 {
            out.push(format!(
                "Mordell sum {} != 4C = {}",
                self.mordell_value,
                4 * self.c
            ));
        }
        if self.first() != self.c {
            out.push(format!("first census interval {} != C = {}", self.first(), self.c));
        }
        if self.first() != self.last() {
            out.push(format!(
                "involution symmetry broken: {} vs {}",
                self.first(),
                self.last()
            ));
        }
        let accounted: u64 =
            self.census.iter().map(|iv| iv.count).sum::<u64>() + self.half_integer_hits.len() as u64;
        if accounted != data.product {
            out.push(format!("census accounts for {accounted} of {} points", data.product));
        }
        let expected_hits = parity_point(data).into_iter().collect::<Vec<_>>();
        if self.half_integer_hits != expected_hits {
            out.push(format!(
                "half-integer hits {:?}, expected {:?}",
                self.half_integer_hits, expected_hits
            ));
        }
        out
    }
}

/// `p_0 = ((a_i - 1)/2)_i` when `A` is odd, the only point of `P` where `q`
/// can be a half-integer.
pub fn parity_point(data: &BrieskornData) -> Option<Vec<u64>> {
    (!data.is_product_even()).then(|| data.a.iter().map(|&ai| (ai - 1) / 2).collect())
}

/// Integer view of the geometry, indexed in the input order. `derive` caps
/// `A` at `i64::MAX / 8`, so `Q < 2nA` fits for `n <= 4`.
struct Scaled {
    a: Vec<i64>,
    two_b: Vec<i64>,
    product: i64,
    u: i64,
    /// Axis counted analytically (largest `a_i`).
    inner: usize,
    /// Remaining axes, enumerated.
    outer: Vec<usize>,
}

impl Scaled {
    fn new(data: &BrieskornData) -> Self {
        let a: Vec<i64> = data.a.iter().map(|&v| v as i64).collect();
        let inner = (0..a.len()).max_by_key(|&i| (a[i], usize::MAX - i)).unwrap_or(0);
        Scaled {
            two_b: data.b.iter().map(|&v| 2 * v as i64).collect(),
            product: data.product as i64,
            u: data.u as i64,
            outer: (0..a.len()).filter(|&i| i != inner).collect(),
            inner,
            a,
        }
    }

    fn inner_len(&self) -> i64 {
        self.a[self.inner]
    }

    fn inner_step(&self) -> i64 {
        self.two_b[self.inner]
    }

    /// Calls `f(coords, base)` for every row; `coords` holds the outer
    /// coordinates in `outer` order and `base = Q` at inner coordinate 0.
    fn for_each_row(&self, mut f: impl FnMut(&[i64], i64)) {
        let dims = self.outer.len();
        let mut coords = vec![0i64; dims];
        let mut base = self.u;
        loop {
            f(&coords, base);
            let mut d = dims;
            loop {
                if d == 0 {
                    return;
                }
                d -= 1;
                let axis = self.outer[d];
                coords[d] += 1;
                base += self.two_b[axis];
                if coords[d] < self.a[axis] {
                    break;
                }
                base -= self.two_b[axis] * coords[d];
                coords[d] = 0;
            }
        }
    }

    /// Number of inner coordinates `z` in the row with `base + step z < threshold`.
    fn count_below(&self, base: i64, threshold: i64) -> i64 {
        let z = Integer::div_ceil(&(threshold - base), &self.inner_step());
        z.clamp(0, self.inner_len())
    }

    fn point(&self, coords: &[i64], z: i64) -> Vec<u64> {
        let mut p = vec![0u64; self.a.len()];
        for (slot, &axis) in self.outer.iter().enumerate() {
            p[axis] = coords[slot] as u64;
        }
        p[self.inner] = z as u64;
        p
    }
}

fn require_small_dimension(data: &BrieskornData) -> Result<()> {
    match data.n() {
        3 | 4 => Ok(()),
        n => Err(Error::UnsupportedDimension(n)),
    }
}

/// `#Δ(a)` by enumeration of the nonnegative orthant, pruned on partial sums.
/// Works for any `n`; `κ <= 0` gives 0.
pub fn simplex_count(data: &BrieskornData) -> u64 {
    let two_b: Vec<i128> = data.b.iter().map(|&v| 2 * v as i128).collect();
    // sum x_i / a_i < κ/2  <=>  sum 2 b_i x_i < κ A = (n - 2) A - u
    let limit = (data.n() as i128 - 2) * data.product as i128 - data.u as i128;
    if limit <= 0 {
        return 0;
    }
    fn walk(two_b: &[i128], partial: i128, limit: i128) -> u64 {
        match two_b {
            [] => u64::from(partial < limit),
            [last] => {
                // x >= 0 with partial + last * x < limit
                Integer::div_ceil(&(limit - partial), last).max(0) as u64
            }
            [first, rest @ ..] => {
                let mut total = 0;
                let mut p = partial;
                while p < limit {
                    total += walk(rest, p, limit);
                    p += first;
                }
                total
            }
        }
    }
    walk(&two_b, 0, limit)
}

/// `d(x) = sum floor(x_i / a_i)` for `x` in the simplex.
pub fn degree_vector(data: &BrieskornData, x: &[i64]) -> Result<u64> {
    let inside = x.len() == data.n()
        && x.iter().all(|&v| v >= 0)
        && {
            let lhs: i128 = x
                .iter()
                .zip(&data.b)
                .map(|(&xi, &bi)| 2 * bi as i128 * xi as i128)
                .sum();
            lhs < (data.n() as i128 - 2) * data.product as i128 - data.u as i128
        };
    if !inside {
        return Err(Error::NotInSimplex(x.to_vec()));
    }
    Ok(x.iter().zip(&data.a).map(|(&xi, &ai)| xi as u64 / ai).sum())
}

/// `q(p) = sum (p_i + 1/2) / a_i`.
pub fn q_value(data: &BrieskornData, p: &[u64]) -> Rational {
    p.iter()
        .zip(&data.a)
        .map(|(&x, &a)| Rational::new(2 * x as i128 + 1, 2 * a as i128))
        .sum()
}

/// `ω(p) = (a_i - 1 - p_i)_i`, which satisfies `q(ω(p)) = n - q(p)`.
pub fn involution(data: &BrieskornData, p: &[i64]) -> Result<Vec<u64>> {
    let inside = p.len() == data.n()
        && p.iter().zip(&data.a).all(|(&x, &a)| x >= 0 && (x as u64) < a);
    if !inside {
        return Err(Error::OutOfBox(p.to_vec()));
    }
    Ok(p.iter().zip(&data.a).map(|(&x, &a)| a - 1 - x as u64).collect())
}

/// `sum_P (r(q) - 1)(r(q) - 2)`, with `r` the nearest integer for `n = 3`
/// and the integer part for `n = 4`.
pub fn mordell_sum(data: &BrieskornData) -> Result<i128> {
    require_small_dimension(data)?;
    let s = Scaled::new(data);
    let n = data.n() as i64;
    // r(q) >= t  <=>  Q >= threshold(t)
    let threshold = |t: i64| {
        if n == 3 {
            (2 * t - 1) * s.product
        } else {
            2 * t * s.product
        }
    };
    let weight = |r: i64| (r - 1) * (r - 2);
    let len = s.inner_len();
    let mut total = 0i64;
    s.for_each_row(|_, base| {
        // at_least[t] = #{z : r(q) >= t}; r ranges over 0..=n
        let mut prev = len;
        for t in 1..=n + 1 {
            let at_least = len - s.count_below(base, threshold(t));
            total += (prev - at_least) * weight(t - 1);
            prev = at_least;
        }
    });
    Ok(total as i128)
}

/// `C` via the Mordell sum, which must be divisible by 4.
pub fn mordell_count(data: &BrieskornData) -> Result<u64> {
    let total = mordell_sum(data)?;
    if total % 4 != 0 || total < 0 {
        return Err(Error::InternalInconsistency(format!(
            "Mordell sum {total} for {:?} is not a nonnegative multiple of 4",
            data.a
        )));
    }
    Ok((total / 4) as u64)
}

/// Distribution of `q` over `P` plus both simplex counts.
pub fn interval_census(data: &BrieskornData) -> Result<LatticeCensus> {
    require_small_dimension(data)?;
    let s = Scaled::new(data);
    let n = data.n() as i64;
    // cut spacing in units of Q = 2A q
    let spacing = if n == 3 { s.product } else { 2 * s.product };
    let pieces = (2 * n * s.product / spacing) as usize;
    let len = s.inner_len();
    let step = s.inner_step();

    // below[j] = #{Q < j * spacing}, for j = 0..=pieces
    let mut below = vec![0i64; pieces + 1];
    let mut hits_on_cut = vec![0i64; pieces + 1];
    let mut hits = Vec::new();
    s.for_each_row(|coords, base| {
        for (j, slot) in below.iter_mut().enumerate() {
            *slot += s.count_below(base, j as i64 * spacing);
        }
        // a hit needs base + step z = t A with step = 2 b_inner and b_inner | A
        if base % (step / 2) != 0 {
            return;
        }
        for t in 1..2 * n {
            let gap = t * s.product - base;
            if gap >= 0 && gap % step == 0 && gap / step < len {
                hits.push(s.point(coords, gap / step));
                if (t * s.product) % spacing == 0 {
                    hits_on_cut[(t * s.product / spacing) as usize] += 1;
                }
            }
        }
    });
    hits.sort();

    let cut = |j: usize| Rational::new(j as i64 * spacing, 2 * s.product);
    let census = (0..pieces)
        .map(|j| IntervalCount {
            lo: cut(j),
            hi: cut(j + 1),
            count: (below[j + 1] - below[j] - hits_on_cut[j]) as u64,
        })
        .collect();

    let mordell_value = mordell_sum(data)?;
    Ok(LatticeCensus {
        c: simplex_count(data),
        mordell_value: i64::try_from(mordell_value)
            .map_err(|_| Error::InternalInconsistency("Mordell sum overflow".into()))?,
        census,
        half_integer_hits: hits,
    })
}
