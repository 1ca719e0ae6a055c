//! `C(k, l)`: the coefficient of `x^k` in `(x + x^2 + ... + x^m)^l`.
//!
//! Equivalently the number of compositions of `k` into `l` parts from
//! `[1, m]`, which is the number of `k`-multisets with a fixed support of
//! size `l`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::math::binom;
use crate::Multiplicity;

/// `ceil(k / m)`, with `ceil(k / inf) = 1`.
pub fn q_of(k: usize, m: Multiplicity) -> usize {
    assert!(k >= 1);
    k.div_ceil(m.effective(k))
}

/// Row `C(k, 0..=k)` for one cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    k: usize,
    m: Multiplicity,
    values: Vec<BigUint>,
}

impl CoeffTable {
    pub fn compute(k: usize, m: Multiplicity) -> Self {
        let values = match m {
            Multiplicity::Unbounded => (0..=k as i64)
                .map(|l| {
                    if k == 0 {
                        BigUint::from(u8::from(l == 0))
                    } else {
                        binom(k as i64 - 1, l - 1)
                    }
                })
                .collect(),
            Multiplicity::Bounded(m) => convolution_row(k, m.min(k.max(1))),
        };
        CoeffTable { k, m, values }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> Multiplicity {
        self.m
    }

    /// `C(k, l)`; zero for `l > k`.
    pub fn get(&self, l: usize) -> &BigUint {
        static ZERO: OnceLock<BigUint> = OnceLock::new();
        self.values
            .get(l)
            .unwrap_or_else(|| ZERO.get_or_init(BigUint::zero))
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

/// Powers of `x + ... + x^m` truncated above degree `k`.
fn convolution_row(k: usize, m: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(k + 1);
    let mut power = vec![BigUint::zero(); k + 1];
    power[0] = BigUint::one();
    row.push(power[k].clone());
    for _ in 1..=k {
        let mut next = vec![BigUint::zero(); k + 1];
        for (deg, c) in power.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for part in 1..=m {
                if deg + part > k {
                    break;
                }
                next[deg + part] += c;
            }
        }
        power = next;
        row.push(power[k].clone());
    }
    row
}

type Cache = Mutex<HashMap<(usize, Multiplicity), Arc<CoeffTable>>>;

/// Memoized table for `(k, m)`; caps at or above `k` share the `m = k` row
/// values but keep their own key.
pub fn table(k: usize, m: Multiplicity) -> Arc<CoeffTable> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache
        .lock()
        .expect("coefficient cache poisoned")
        .get(&(k, m))
    {
        return Arc::clone(t);
    }
    let t = Arc::new(CoeffTable::compute(k, m));
    cache
        .lock()
        .expect("coefficient cache poisoned")
        .entry((k, m))
        .or_insert(t)
        .clone()
}

pub fn coeff(k: usize, l: usize, m: Multiplicity) -> BigUint {
    table(k, m).get(l).clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PropertyStatus {
    Pass,
    Fail { ell: Option<usize>, detail: String },
    Skipped { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    #[serde(flatten)]
    pub status: PropertyStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoeffReport {
    pub k: usize,
    pub m: Multiplicity,
    pub n: usize,
    pub q: usize,
    pub properties: Vec<PropertyOutcome>,
}

impl CoeffReport {
    /// No property failed; skipped ones do not count against the report.
    pub fn passed(&self) -> bool {
        self.properties
            .iter()
            .all(|p| !matches!(p.status, PropertyStatus::Fail { .. }))
    }
}

impl fmt::Display for CoeffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k={} m={} n={} q={}", self.k, self.m, self.n, self.q)?;
        for p in &self.properties {
            match &p.status {
                PropertyStatus::Pass => writeln!(f, "  {}: pass", p.name)?,
                PropertyStatus::Fail { ell, detail } => {
                    writeln!(f, "  {}: FAIL at l={ell:?}: {detail}", p.name)?
                }
                PropertyStatus::Skipped { reason } => {
                    writeln!(f, "  {}: skipped ({reason})", p.name)?
                }
            }
        }
        Ok(())
    }
}

/// Evaluates the four structural properties of the row `C(k, .)`:
///
/// * `positivity`: `C(k, l) > 0` exactly for `q <= l <= k`;
/// * `least-support`: `C(k, q) = 1` exactly when `min(k, m)` divides `k`;
/// * `full-support`: `C(k, k) = 1`;
/// * `mirror`: `C(k, l) >= C(k, n - l)` for `q <= l <= min(k, n / 2)`, which
///   needs `n >= k + q`.
pub fn check_coeff_properties(k: usize, m: Multiplicity, n: usize) -> CoeffReport {
    let t = table(k, m);
    let q = q_of(k, m);
    let cap = m.effective(k);
    let mut properties = Vec::with_capacity(4);

    let positivity = (0..=n.max(k) + 1)
        .find(|&l| !t.get(l).is_zero() != (q..=k).contains(&l))
        .map_or(PropertyStatus::Pass, |l| PropertyStatus::Fail {
            ell: Some(l),
            detail: format!("C({k},{l}) = {}", t.get(l)),
        });
    properties.push(PropertyOutcome {
        name: "positivity",
        status: positivity,
    });

    let divides = k.is_multiple_of(cap);
    let least = if t.get(q).is_one() == divides {
        PropertyStatus::Pass
    } else {
        PropertyStatus::Fail {
            ell: Some(q),
            detail: format!("C({k},{q}) = {} while min(k,m) | k is {divides}", t.get(q)),
        }
    };
    properties.push(PropertyOutcome {
        name: "least-support",
        status: least,
    });

    let full = if t.get(k).is_one() {
        PropertyStatus::Pass
    } else {
        PropertyStatus::Fail {
            ell: Some(k),
            detail: format!("C({k},{k}) = {}", t.get(k)),
        }
    };
    properties.push(PropertyOutcome {
        name: "full-support",
        status: full,
    });

    let mirror = if n < k + q {
        PropertyStatus::Skipped {
            reason: format!("needs n >= k + q = {}", k + q),
        }
    } else {
        (q..=k.min(n / 2))
            .find(|&l| t.get(l) < t.get(n - l))
            .map_or(PropertyStatus::Pass, |l| PropertyStatus::Fail {
                ell: Some(l),
                detail: format!(
                    "C({k},{l}) = {} < C({k},{}) = {}",
                    t.get(l),
                    n - l,
                    t.get(n - l)
                ),
            })
    };
    properties.push(PropertyOutcome {
        name: "mirror",
        status: mirror,
    });

    CoeffReport {
        k,
        m,
        n,
        q,
        properties,
    }
}

/// CSV with one row per `l` and one column per `k`.
pub fn table_csv(ks: &[usize], m: Multiplicity) -> String {
    let mut out = String::from("l");
    for k in ks {
        out.push_str(&format!(",k={k}"));
    }
    out.push('\n');
    let max_l = ks.iter().copied().max().unwrap_or(0);
    for l in 0..=max_l {
        out.push_str(&l.to_string());
        for &k in ks {
            out.push_str(&format!(",{}", coeff(k, l, m)));
        }
        out.push('\n');
    }
    out
}
