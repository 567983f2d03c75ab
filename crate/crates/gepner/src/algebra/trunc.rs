//! Truncated power series in (p, x, y, z): all arithmetic drops terms of
//! total degree above a fixed order r.
//!
//! These are the shifted coordinates q = 1+p, t32 = 1+x, t13 = 1+y,
//! t21 = 1+z. The two operations the truncated recurrence engine needs are
//! the variable substitution v -> p + v + p*v (the image of t -> q*t) and
//! multiplication by the truncated binomial (1+v)^a.
//!
//! Coefficients live in a dense vector indexed by a rank over the simplex
//! of monomials with total degree <= r; the rank tables and the expansion
//! tables for (p+v+pv)^k are cached per order. Total degree never decreases
//! under either operation, so truncation commutes with the recurrence.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::numbers::binomial;

/// One of the shifted catalytic variables (p itself is never substituted).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftVar {
    X,
    Y,
    Z,
}

impl ShiftVar {
    fn index(self) -> usize {
        match self {
            ShiftVar::X => 1,
            ShiftVar::Y => 2,
            ShiftVar::Z => 3,
        }
    }
}

/// Per-order tables: the monomial list, the packed-exponent -> rank lookup,
/// and the truncated expansions of (p + v + p*v)^k for k <= order.
#[derive(Debug)]
pub struct TruncCtx {
    order: usize,
    monos: Vec<[u8; 4]>,
    rank: Vec<u32>,
    subst: Vec<Vec<(u8, u8, BigInt)>>,
}

const NO_RANK: u32 = u32::MAX;

impl TruncCtx {
    fn build(order: usize) -> TruncCtx {
        assert!(order <= 120, "truncation order out of range");
        let side = order + 1;
        let mut monos = Vec::new();
        let mut rank = vec![NO_RANK; side * side * side * side];
        for ep in 0..side {
            for ex in 0..side - ep {
                for ey in 0..side - ep - ex {
                    for ez in 0..side - ep - ex - ey {
                        let e = [ep as u8, ex as u8, ey as u8, ez as u8];
                        rank[Self::pack(order, &e)] = monos.len() as u32;
                        monos.push(e);
                    }
                }
            }
        }
        // (p + v + pv)^k expanded by repeated multiplication over (dp, dv)
        let mut subst = Vec::with_capacity(order + 1);
        let mut cur: HashMap<(u8, u8), BigInt> = HashMap::new();
        cur.insert((0, 0), BigInt::one());
        for _ in 0..=order {
            let mut entries: Vec<(u8, u8, BigInt)> = cur
                .iter()
                .filter(|((dp, dv), _)| (*dp as usize) + (*dv as usize) <= order)
                .map(|(&(dp, dv), c)| (dp, dv, c.clone()))
                .collect();
            entries.sort_by_key(|&(dp, dv, _)| (dp, dv));
            subst.push(entries);
            let mut next: HashMap<(u8, u8), BigInt> = HashMap::new();
            for ((dp, dv), c) in &cur {
                for (ap, av) in [(1u8, 0u8), (0, 1), (1, 1)] {
                    *next.entry((dp + ap, dv + av)).or_default() += c;
                }
            }
            cur = next;
        }
        TruncCtx { order, monos, rank, subst }
    }

    fn pack(order: usize, e: &[u8; 4]) -> usize {
        let side = order + 1;
        (((e[0] as usize * side) + e[1] as usize) * side + e[2] as usize) * side + e[3] as usize
    }

    fn rank_of(&self, e: &[u8; 4]) -> usize {
        let r = self.rank[Self::pack(self.order, e)];
        debug_assert!(r != NO_RANK);
        r as usize
    }
}

fn ctx(order: usize) -> Arc<TruncCtx> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<TruncCtx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(order)
        .or_insert_with(|| Arc::new(TruncCtx::build(order)))
        .clone()
}

/// A series truncated at total degree `order`, with exact integer
/// coefficients.
#[derive(Debug, Clone)]
pub struct TruncSeries {
    ctx: Arc<TruncCtx>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for TruncSeries {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.coeffs == other.coeffs
    }
}
impl Eq for TruncSeries {}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        let ctx = ctx(order);
        let n = ctx.monos.len();
        TruncSeries { ctx, coeffs: vec![BigInt::zero(); n] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn order(&self) -> usize {
        self.ctx.order
    }

    /// Add c to the coefficient of the given monomial; terms beyond the
    /// truncation order are dropped, which is the defining semantics.
    pub fn add_term(&mut self, exps: [u8; 4], c: BigInt) {
        let total: usize = exps.iter().map(|&e| e as usize).sum();
        if total > self.ctx.order {
            return;
        }
        let r = self.ctx.rank_of(&exps);
        self.coeffs[r] += c;
    }

    pub fn coeff(&self, exps: [u8; 4]) -> BigInt {
        let total: usize = exps.iter().map(|&e| e as usize).sum();
        if total > self.ctx.order {
            return BigInt::zero();
        }
        self.coeffs[self.ctx.rank_of(&exps)].clone()
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u8; 4], &BigInt)> {
        self.ctx
            .monos
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add_assign(&mut self, other: &TruncSeries) {
        assert_eq!(self.ctx.order, other.ctx.order);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// Truncating product.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        assert_eq!(self.ctx.order, other.ctx.order);
        let order = self.ctx.order;
        let mut out = TruncSeries::zero(order);
        for (e1, c1) in self.terms() {
            let t1: usize = e1.iter().map(|&e| e as usize).sum();
            for (e2, c2) in other.terms() {
                let t2: usize = e2.iter().map(|&e| e as usize).sum();
                if t1 + t2 > order {
                    continue;
                }
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.coeffs[out.ctx.rank_of(&e)] += c1 * c2;
            }
        }
        out
    }

    /// The image under v -> p + v + p*v, truncated. This is the shifted
    /// form of t -> q*t.
    pub fn substitute(&self, v: ShiftVar) -> TruncSeries {
        let vi = v.index();
        let order = self.ctx.order;
        let mut out = TruncSeries::zero(order);
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.ctx.monos[idx];
            let k = e[vi] as usize;
            let total: usize = e.iter().map(|&x| x as usize).sum();
            let rest = total - k;
            for (dp, dv, tc) in &self.ctx.subst[k] {
                if rest + *dp as usize + *dv as usize > order {
                    continue;
                }
                let mut e2 = e;
                e2[0] = e[0] + dp;
                e2[vi] = *dv;
                out.coeffs[out.ctx.rank_of(&e2)] += c * tc;
            }
        }
        out
    }

    /// Multiply by the truncated binomial (1+v)^a = sum_i C(a,i) v^i.
    pub fn mul_binomial(&self, v: ShiftVar, a: u64) -> TruncSeries {
        if a == 0 {
            return self.clone();
        }
        let vi = v.index();
        let order = self.ctx.order;
        let binoms: Vec<BigInt> = (0..=order as u64).map(|i| binomial(a, i)).collect();
        let mut out = TruncSeries::zero(order);
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.ctx.monos[idx];
            let total: usize = e.iter().map(|&x| x as usize).sum();
            let slack = (order - total).min(a as usize);
            for (i, b) in binoms.iter().take(slack + 1).enumerate() {
                let mut e2 = e;
                e2[vi] += i as u8;
                out.coeffs[out.ctx.rank_of(&e2)] += c * b;
            }
        }
        out
    }

    /// Restriction x = y = z = 0: the univariate truncation in p, as
    /// coefficients of p^0 .. p^order.
    pub fn restrict_p(&self) -> Vec<BigInt> {
        (0..=self.ctx.order as u8)
            .map(|ep| self.coeff([ep, 0, 0, 0]))
            .collect()
    }
}
