//! Divided differences with repeated nodes.
//!
//! `f[x_1, …, x_N]` is evaluated with a Hermite (confluent) Newton table:
//! nodes are sorted, nodes closer than [`CLUSTER_TOL`] are merged into one
//! node with multiplicity, and entries of the table that would divide by a
//! zero gap are replaced by `f^{(k)}(x)/k!`.

use crate::error::{Error, Result};

/// Nodes whose consecutive gap is at most this are treated as equal.
pub const CLUSTER_TOL: f64 = 1e-9;

/// A smooth function that can report its derivatives.
pub trait SmoothFamily {
    /// The `order`-th derivative at `x`, or `None` if it does not exist
    /// (or is not implemented) there.
    fn derivative(&self, order: usize, x: f64) -> Option<f64>;

    fn value(&self, x: f64) -> Option<f64> {
        self.derivative(0, x)
    }

    /// First divided difference `f[x, y]` for `x ≠ y`. Families can override
    /// this with a form that does not cancel when `x` and `y` are close.
    fn pair_difference(&self, x: f64, y: f64) -> Option<f64> {
        Some((self.value(x)? - self.value(y)?) / (x - y))
    }
}

/// `x ↦ x^a ln x` on `[0, ∞)`, extended by its limit at zero.
///
/// The `k`-th derivative is `x^{a−k} (c_k ln x + d_k)` with
/// `c_{k+1} = (a−k) c_k` and `d_{k+1} = (a−k) d_k + c_k`. At `x = 0` every
/// derivative with `k < a` vanishes; higher orders are unavailable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XPowLog {
    pub power: f64,
}

impl XPowLog {
    pub fn new(power: f64) -> Self {
        Self { power }
    }
}

impl SmoothFamily for XPowLog {
    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        let a = self.power;
        if x < 0.0 || !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return if (order as f64) < a { Some(0.0) } else { None };
        }
        let (mut ck, mut dk) = (1.0, 0.0);
        for k in 0..order {
            let m = a - k as f64;
            dk = m * dk + ck;
            ck *= m;
        }
        Some(x.powf(a - order as f64) * (ck * x.ln() + dk))
    }

    /// For nearby `x, y > 0` with `u = (x − y)/y`:
    /// `f[x, y] = y^{a−1} · expm1(a·ln1p(u))/u · ln x + y^{a−1} · ln1p(u)/u`.
    fn pair_difference(&self, x: f64, y: f64) -> Option<f64> {
        let a = self.power;
        if x < 0.0 || y < 0.0 {
            return None;
        }
        let close = (x - y).abs() <= 0.5 * x.max(y);
        if !close || x == 0.0 || y == 0.0 {
            return Some((self.value(x)? - self.value(y)?) / (x - y));
        }
        let u = (x - y) / y;
        let l1 = u.ln_1p();
        let scale = y.powf(a - 1.0);
        Some(scale * ((a * l1).exp_m1() / u * x.ln() + l1 / u))
    }
}

/// `x ↦ x^b` on `[0, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Power {
    pub exponent: f64,
}

impl Power {
    pub fn new(exponent: f64) -> Self {
        Self { exponent }
    }
}

impl SmoothFamily for Power {
    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        let b = self.exponent;
        if x < 0.0 || !x.is_finite() {
            return None;
        }
        let falling: f64 = (0..order).map(|k| b - k as f64).product();
        if falling == 0.0 {
            return Some(0.0);
        }
        let e = b - order as f64;
        if x == 0.0 {
            return match e.partial_cmp(&0.0) {
                Some(std::cmp::Ordering::Greater) => Some(0.0),
                Some(std::cmp::Ordering::Equal) => Some(falling),
                _ => None,
            };
        }
        Some(falling * x.powf(e))
    }

    fn pair_difference(&self, x: f64, y: f64) -> Option<f64> {
        if x < 0.0 || y < 0.0 {
            return None;
        }
        if (x - y).abs() > 0.5 * x.max(y) || x == 0.0 || y == 0.0 {
            return Some((self.value(x)? - self.value(y)?) / (x - y));
        }
        let u = (x - y) / y;
        Some(y.powf(self.exponent - 1.0) * (self.exponent * u.ln_1p()).exp_m1() / u)
    }
}

/// Adapter for closures `(order, x) -> Option<f64>`.
pub struct FnFamily<F>(pub F);

impl<F: Fn(usize, f64) -> Option<f64>> SmoothFamily for FnFamily<F> {
    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        (self.0)(order, x)
    }
}

/// Sorted node clusters with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet {
    nodes: Vec<f64>,
    multiplicities: Vec<usize>,
}

impl NodeSet {
    /// Clusters `raw` with the default tolerance.
    pub fn new(raw: &[f64]) -> Self {
        Self::with_tolerance(raw, CLUSTER_TOL)
    }

    /// Sorts `raw` and merges runs whose consecutive gaps are `≤ tol`; each
    /// cluster is represented by its mean.
    pub fn with_tolerance(raw: &[f64], tol: f64) -> Self {
        let mut sorted = raw.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut nodes = Vec::new();
        let mut multiplicities = Vec::new();
        let mut start = 0;
        for i in 1..=sorted.len() {
            if i == sorted.len() || sorted[i] - sorted[i - 1] > tol {
                let run = &sorted[start..i];
                nodes.push(run.iter().sum::<f64>() / run.len() as f64);
                multiplicities.push(run.len());
                start = i;
            }
        }
        Self {
            nodes,
            multiplicities,
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Total node count, counting multiplicity.
    pub fn len(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities.iter().copied().max().unwrap_or(0)
    }

    /// Expanded node list, each representative repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        self.nodes
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&x, &m)| std::iter::repeat_n(x, m))
            .collect()
    }
}

/// Confluent divided difference `f[x_1, …, x_N]`.
pub fn confluent_divided_difference<F: SmoothFamily + ?Sized>(f: &F, nodes: &[f64]) -> Result<f64> {
    divided_difference_on(f, &NodeSet::new(nodes))
}

/// Divided difference over an already clustered node set.
pub fn divided_difference_on<F: SmoothFamily + ?Sized>(f: &F, set: &NodeSet) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::BadParameter(
            "divided difference of zero nodes".into(),
        ));
    }
    let z = set.expanded();
    let n = z.len();
    let eval = |order: usize, x: f64| {
        f.derivative(order, x)
            .ok_or(Error::DerivativeUnavailable { order, at: x })
    };

    let mut table = Vec::with_capacity(n);
    for &x in &z {
        table.push(eval(0, x)?);
    }
    let mut factorial = 1.0;
    for j in 1..n {
        factorial *= j as f64;
        for i in (j..n).rev() {
            table[i] = if z[i] == z[i - j] {
                eval(j, z[i])? / factorial
            } else if j == 1 {
                f.pair_difference(z[i], z[i - 1])
                    .ok_or(Error::DerivativeUnavailable { order: 0, at: z[i] })?
            } else {
                (table[i] - table[i - 1]) / (z[i] - z[i - j])
            };
        }
    }
    Ok(table[n - 1])
}

/// The classical formula `Σ_j f(x_j) / Π_{i≠j} (x_j − x_i)` for pairwise
/// distinct nodes.
pub fn quotient_divided_difference<F: SmoothFamily + ?Sized>(f: &F, nodes: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for (j, &xj) in nodes.iter().enumerate() {
        let mut denom = 1.0;
        for (i, &xi) in nodes.iter().enumerate() {
            if i != j {
                denom *= xj - xi;
            }
        }
        if denom == 0.0 {
            return Err(Error::BadParameter(
                "quotient formula needs pairwise distinct nodes".into(),
            ));
        }
        let fx = f
            .value(xj)
            .ok_or(Error::DerivativeUnavailable { order: 0, at: xj })?;
        total += fx / denom;
    }
    Ok(total)
}
