//! Integer Witt structure polynomials from the ghost-component recursion.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Longest Witt vectors for which structure polynomials are built.
pub const WITT_LENGTH_CEILING: usize = 4;

/// Integer polynomial in `2n` variables `X_0..X_{n-1}, Y_0..Y_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    pub terms: BTreeMap<Vec<u32>, i128>,
}

const OVERFLOW: Error = Error::Overflow("Witt structure polynomial coefficient");

impl IntPoly {
    fn var(nvars: usize, i: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = power;
        IntPoly {
            terms: BTreeMap::from([(e, 1)]),
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: i128) -> Result<()> {
        let slot = self.terms.entry(e.clone()).or_insert(0);
        *slot = slot.checked_add(c).ok_or(OVERFLOW)?;
        if *slot == 0 {
            self.terms.remove(&e);
        }
        Ok(())
    }

    fn add(&self, other: &Self, sign: i128) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.checked_mul(sign).ok_or(OVERFLOW)?)?;
        }
        Ok(out)
    }

    fn scale(&self, k: i128) -> Result<Self> {
        let mut out = IntPoly::default();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.checked_mul(k).ok_or(OVERFLOW)?)?;
        }
        Ok(out)
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = IntPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.checked_mul(*c2).ok_or(OVERFLOW)?)?;
            }
        }
        Ok(out)
    }

    fn pow(&self, n: u64) -> Result<Self> {
        let nvars = self.terms.keys().next().map_or(0, Vec::len);
        let mut acc = IntPoly {
            terms: BTreeMap::from([(vec![0; nvars], 1)]),
        };
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn exact_div(&self, k: i128) -> Result<Self> {
        let mut out = IntPoly::default();
        for (e, c) in &self.terms {
            if c % k != 0 {
                return Err(Error::Overflow("non-integral ghost recursion"));
            }
            out.terms.insert(e.clone(), c / k);
        }
        Ok(out)
    }

    /// Coefficient of a monomial given as exponent vector.
    pub fn coeff(&self, e: &[u32]) -> i128 {
        self.terms.get(e).copied().unwrap_or(0)
    }
}

impl std::fmt::Display for IntPoly {
    /// Variables print as `X0..`, `Y0..`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let half = self.terms.keys().next().map_or(0, |e| e.len() / 2);
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| {
                    let v = if i < half {
                        format!("X{i}")
                    } else {
                        format!("Y{}", i - half)
                    };
                    if d == 1 {
                        v
                    } else {
                        format!("{v}^{d}")
                    }
                })
                .collect();
            let sign = if *c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if k > 0 {
                f.write_str(" ")?;
            }
            let a = c.unsigned_abs();
            match (a, mono.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (1, false) => f.write_str(&mono.join("*"))?,
                _ => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Sum and product polynomials `S_0..S_{n-1}`, `P_0..P_{n-1}` over `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructurePolys {
    pub p: u64,
    pub len: usize,
    pub sums: Vec<IntPoly>,
    pub prods: Vec<IntPoly>,
}

/// Ghost component `w_k = Σ_{i≤k} p^i Z_i^(p^(k-i))` in the variables
/// starting at `offset`.
fn ghost(p: u64, k: usize, nvars: usize, offset: usize) -> Result<IntPoly> {
    let mut w = IntPoly::default();
    for i in 0..=k {
        let power = p.checked_pow((k - i) as u32).ok_or(OVERFLOW)? as u32;
        let coeff = (p as i128).checked_pow(i as u32).ok_or(OVERFLOW)?;
        w = w.add(&IntPoly::var(nvars, offset + i, power).scale(coeff)?, 1)?;
    }
    Ok(w)
}

fn build(p: u64, len: usize) -> Result<StructurePolys> {
    let nvars = 2 * len;
    let mut sums: Vec<IntPoly> = Vec::with_capacity(len);
    let mut prods: Vec<IntPoly> = Vec::with_capacity(len);
    for k in 0..len {
        let wx = ghost(p, k, nvars, 0)?;
        let wy = ghost(p, k, nvars, len)?;
        let mut s = wx.add(&wy, 1)?;
        let mut m = wx.mul(&wy)?;
        for i in 0..k {
            let weight = (p as i128).checked_pow(i as u32).ok_or(OVERFLOW)?;
            let power = p.checked_pow((k - i) as u32).ok_or(OVERFLOW)?;
            s = s.add(&sums[i].pow(power)?.scale(weight)?, -1)?;
            m = m.add(&prods[i].pow(power)?.scale(weight)?, -1)?;
        }
        let pk = (p as i128).checked_pow(k as u32).ok_or(OVERFLOW)?;
        sums.push(s.exact_div(pk)?);
        prods.push(m.exact_div(pk)?);
    }
    Ok(StructurePolys { p, len, sums, prods })
}

type Cache = Mutex<HashMap<(u64, usize), Arc<StructurePolys>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Structure polynomials for Witt vectors of length `len` over `F_p`,
/// computed once per `(p, len)` and shared afterwards.
pub fn witt_structure_polys(p: u64, len: usize) -> Result<Arc<StructurePolys>> {
    if len == 0 || len > WITT_LENGTH_CEILING {
        return Err(Error::WittLengthCeiling {
            requested: len,
            ceiling: WITT_LENGTH_CEILING,
        });
    }
    if let Some(hit) = cache().lock().expect("cache poisoned").get(&(p, len)) {
        return Ok(hit.clone());
    }
    // built outside the lock; concurrent builders produce identical values
    let built = Arc::new(build(p, len)?);
    let mut guard = cache().lock().expect("cache poisoned");
    Ok(guard.entry((p, len)).or_insert(built).clone())
}
