//! Potentials V(x) on (-inf, x_max): a built-in catalog plus expression-defined
//! potentials, with drift f = -V'/2, symbolic derivatives f^(n), the map to the
//! Schroedinger potential V_S = f' + f^2, and asymptotic classification of the
//! behaviour as x -> -inf.
//!
//! Catalog entries (name, V(x), f(x)):
//!   linear          -2x                 1
//!   parabolic       x^2                 -x
//!   exp-growth      exp(-x)             exp(-x)/2
//!   exp-decay       exp(x)              -exp(x)/2
//!   logcosh         2 log cosh x        -tanh x
//!   sqrt-growth     sqrt(-x)            1/(4 sqrt(-x))      (x_max = 0)
//!   log-growth:a    a log(-x)           -a/(2x)             (x_max = 0)
//!   kink            exp(-x) for x<0, 1-x for x>0; f has a corner at 0
//!
//! Catalog derivatives are closed forms; expression potentials differentiate
//! symbolically at profile construction.

use crate::error::{Error, Result};
use crate::expr::{self, Expr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogId {
    Linear,
    Parabolic,
    ExpGrowth,
    ExpDecay,
    LogCosh,
    SqrtGrowth,
    LogGrowth, // carries alpha in PotentialSpec
    Kink,
}

impl CatalogId {
    /// Index of the worked example this entry reproduces (1..=8).
    pub fn example_number(self) -> u8 {
        match self {
            CatalogId::Linear => 1,
            CatalogId::Parabolic => 2,
            CatalogId::ExpGrowth => 3,
            CatalogId::ExpDecay => 4,
            CatalogId::LogCosh => 5,
            CatalogId::SqrtGrowth => 6,
            CatalogId::LogGrowth => 7,
            CatalogId::Kink => 8,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Source {
    Catalog { id: CatalogId, alpha: f64 },
    Expression { text: String, ast: Expr },
}

/// A validated potential definition.
#[derive(Debug, Clone)]
pub struct PotentialSpec {
    pub source: Source,
    /// Least upper bound of the validity domain; +inf when defined everywhere.
    pub domain_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VLimit {
    PlusInfinity,
    MinusInfinity,
    Finite(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FLimit {
    PlusInfinity,
    MinusInfinity,
    Nonzero(f64),
    Zero,
}

/// Growth category of V as x -> -inf. For divergent V the boundary cases are
/// drawn where the expansion verdicts change: `ExponentialOrFaster` means the
/// drift itself blows up exponentially, `Linear` covers every divergence with
/// nonvanishing drift below that, `SublinearSuperlog` is divergence faster
/// than logarithmic with vanishing drift, and `LogarithmicOrSlower` is the
/// rest. For convergent V the tags grade the approach to V0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthTag {
    ExponentialOrFaster,
    Linear,
    SublinearSuperlog,
    LogarithmicOrSlower,
    ExponentialDecay,
    SuperpolynomialDecay,
    PowerDecayOrSlower,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticClass {
    pub v_limit: VLimit,
    pub f_limit: FLimit,
    pub growth: GrowthTag,
}

impl AsymptoticClass {
    pub fn v0(&self) -> Option<f64> {
        match self.v_limit {
            VLimit::Finite(v0) => Some(v0),
            _ => None,
        }
    }

    /// Limit of the drift when finite (0 for the zero class).
    pub fn f_const(&self) -> Option<f64> {
        match self.f_limit {
            FLimit::Zero => Some(0.0),
            FLimit::Nonzero(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Evaluators for V, f and the derivatives of f, plus the stored asymptotic
/// classification. Immutable after construction.
#[derive(Debug, Clone)]
pub struct PotentialProfile {
    kind: ProfileKind,
    pub class: AsymptoticClass,
    pub x_max: f64,
    max_order: usize,
}

#[derive(Debug, Clone)]
enum ProfileKind {
    Catalog { id: CatalogId, alpha: f64 },
    Exprs { v: Expr, f_derivs: Vec<Expr> },
    /// Evaluates the parent at -x; used for left coefficients on the full line.
    Mirror(Box<PotentialProfile>),
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// Parse expression text into a spec (domain defaults to the whole line).
pub fn parse_potential(text: &str) -> Result<PotentialSpec> {
    let ast = expr::parse(text)?;
    Ok(PotentialSpec {
        source: Source::Expression {
            text: text.to_string(),
            ast,
        },
        domain_max: f64::INFINITY,
    })
}

/// Resolve a catalog name such as `linear` or `log-growth:0.5`.
pub fn catalog(name: &str) -> Result<PotentialSpec> {
    let (id, alpha) = if let Some(rest) = name.strip_prefix("log-growth:") {
        let alpha: f64 = rest
            .parse()
            .map_err(|_| Error::UnknownPotential(name.to_string()))?;
        if alpha <= 0.0 {
            return Err(Error::InvalidInput(
                "log-growth requires alpha > 0".into(),
            ));
        }
        (CatalogId::LogGrowth, alpha)
    } else {
        let id = match name {
            "linear" => CatalogId::Linear,
            "parabolic" => CatalogId::Parabolic,
            "exp-growth" => CatalogId::ExpGrowth,
            "exp-decay" => CatalogId::ExpDecay,
            "logcosh" => CatalogId::LogCosh,
            "sqrt-growth" => CatalogId::SqrtGrowth,
            "kink" => CatalogId::Kink,
            _ => return Err(Error::UnknownPotential(name.to_string())),
        };
        (id, 0.0)
    };
    Ok(PotentialSpec {
        source: Source::Catalog { id, alpha },
        domain_max: match id {
            CatalogId::SqrtGrowth | CatalogId::LogGrowth => 0.0,
            _ => f64::INFINITY,
        },
    })
}

/// Accept either a catalog name or expression text.
pub fn resolve(name_or_expr: &str) -> Result<PotentialSpec> {
    match catalog(name_or_expr) {
        Ok(spec) => Ok(spec),
        Err(Error::UnknownPotential(_)) => parse_potential(name_or_expr),
        Err(e) => Err(e),
    }
}

/// Build evaluators with symbolic derivatives of f up to `max_order`.
pub fn build_profile(spec: &PotentialSpec, max_order: usize) -> Result<PotentialProfile> {
    let class = classify_asymptotics(spec)?;
    match &spec.source {
        Source::Catalog { id, alpha } => Ok(PotentialProfile {
            kind: ProfileKind::Catalog { id: *id, alpha: *alpha },
            class,
            x_max: spec.domain_max,
            max_order: usize::MAX,
        }),
        Source::Expression { ast, .. } => {
            let f = crate::expr::Expr::Neg(Box::new(ast.diff())); // -V'
            let f = match f {
                e => Expr::Div(Box::new(e), Box::new(Expr::Num(2.0))),
            };
            let mut f_derivs = Vec::with_capacity(max_order + 1);
            f_derivs.push(f);
            for n in 0..max_order {
                let next = f_derivs[n].diff();
                f_derivs.push(next);
            }
            Ok(PotentialProfile {
                kind: ProfileKind::Exprs {
                    v: ast.clone(),
                    f_derivs,
                },
                class,
                x_max: spec.domain_max,
                max_order,
            })
        }
    }
}

impl PotentialProfile {
    pub fn eval_v(&self, x: f64) -> f64 {
        match &self.kind {
            ProfileKind::Catalog { id, alpha } => catalog_v(*id, *alpha, x),
            ProfileKind::Exprs { v, .. } => v.eval(x),
            ProfileKind::Mirror(p) => p.eval_v(-x),
        }
    }

    pub fn eval_f(&self, x: f64) -> f64 {
        self.eval_f_deriv(x, 0).expect("order 0 always available")
    }

    /// n-th derivative of f. Errors at a breakpoint for n >= 1 (query a side
    /// explicitly) and when the profile was built with a smaller max order.
    pub fn eval_f_deriv(&self, x: f64, n: usize) -> Result<f64> {
        match &self.kind {
            ProfileKind::Catalog { id, alpha } => catalog_f_deriv(*id, *alpha, x, n, None),
            ProfileKind::Exprs { f_derivs, .. } => {
                let e = f_derivs
                    .get(n)
                    .ok_or(Error::MissingDerivative(n, self.max_order))?;
                Ok(e.eval(x))
            }
            ProfileKind::Mirror(p) => {
                // V_m(x) = V(-x)  =>  f_m^(n)(x) = (-1)^(n+1) f^(n)(-x)
                let v = p.eval_f_deriv(-x, n)?;
                Ok(if n % 2 == 0 { -v } else { v })
            }
        }
    }

    /// One-sided derivative at a breakpoint of a piecewise profile.
    pub fn eval_f_deriv_side(&self, x: f64, n: usize, side: Side) -> Result<f64> {
        match &self.kind {
            ProfileKind::Catalog { id, alpha } => catalog_f_deriv(*id, *alpha, x, n, Some(side)),
            ProfileKind::Mirror(p) => {
                let flipped = match side {
                    Side::Left => Side::Right,
                    Side::Right => Side::Left,
                };
                let v = p.eval_f_deriv_side(-x, n, flipped)?;
                Ok(if n % 2 == 0 { -v } else { v })
            }
            _ => self.eval_f_deriv(x, n),
        }
    }

    /// Interior points where f is continuous but not differentiable.
    pub fn breakpoints(&self) -> &'static [f64] {
        match &self.kind {
            ProfileKind::Catalog { id: CatalogId::Kink, .. } => &[0.0],
            ProfileKind::Mirror(p) => {
                // breakpoints are symmetric in the catalog (only the kink at 0)
                p.breakpoints()
            }
            _ => &[],
        }
    }

    pub fn example_number(&self) -> Option<u8> {
        match &self.kind {
            ProfileKind::Catalog { id, .. } => Some(id.example_number()),
            _ => None,
        }
    }

    pub fn log_growth_alpha(&self) -> Option<f64> {
        match &self.kind {
            ProfileKind::Catalog { id: CatalogId::LogGrowth, alpha } => Some(*alpha),
            _ => None,
        }
    }

    /// Profile of the reflected potential V(-x), classified at its own -inf
    /// (that is, at +inf of the parent). Requires the parent to be defined on
    /// the whole line.
    pub fn mirrored(&self) -> Result<PotentialProfile> {
        if self.x_max.is_finite() {
            return Err(Error::InvalidInput(
                "mirror requires a potential defined on the full line".into(),
            ));
        }
        let sample_v = |x: f64| self.eval_v(-x);
        let sample_f = |x: f64| -self.eval_f(-x);
        let class = classify_by_sampling(&sample_v, &sample_f)?;
        Ok(PotentialProfile {
            kind: ProfileKind::Mirror(Box::new(self.clone())),
            class,
            x_max: f64::INFINITY,
            max_order: self.max_order,
        })
    }
}

/// Schroedinger potential V_S(x) = f'(x) + f(x)^2.
pub fn schrodinger_potential(profile: &PotentialProfile, x: f64) -> Result<f64> {
    if x >= profile.x_max {
        return Err(Error::OutsideDomain {
            x,
            x_max: profile.x_max,
        });
    }
    let f = profile.eval_f(x);
    let fp = profile.eval_f_deriv(x, 1)?;
    Ok(fp + f * f)
}

// ---------------------------------------------------------------------------
// Catalog closed forms
// ---------------------------------------------------------------------------

fn catalog_v(id: CatalogId, alpha: f64, x: f64) -> f64 {
    match id {
        CatalogId::Linear => -2.0 * x,
        CatalogId::Parabolic => x * x,
        CatalogId::ExpGrowth => (-x).exp(),
        CatalogId::ExpDecay => x.exp(),
        CatalogId::LogCosh => 2.0 * x.cosh().ln(),
        CatalogId::SqrtGrowth => (-x).sqrt(),
        CatalogId::LogGrowth => alpha * (-x).ln(),
        CatalogId::Kink => {
            if x < 0.0 {
                (-x).exp()
            } else {
                1.0 - x
            }
        }
    }
}

fn catalog_f_deriv(id: CatalogId, alpha: f64, x: f64, n: usize, side: Option<Side>) -> Result<f64> {
    Ok(match id {
        CatalogId::Linear => {
            if n == 0 {
                1.0
            } else {
                0.0
            }
        }
        CatalogId::Parabolic => match n {
            0 => -x,
            1 => -1.0,
            _ => 0.0,
        },
        CatalogId::ExpGrowth => {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            s * 0.5 * (-x).exp()
        }
        CatalogId::ExpDecay => -0.5 * x.exp(),
        CatalogId::LogCosh => -tanh_deriv(x, n),
        CatalogId::SqrtGrowth => {
            // f = (1/4)(-x)^(-1/2); each derivative multiplies by (2m+1)/2 / (-x)
            let mut c = 0.25;
            for m in 0..n {
                c *= (2 * m + 1) as f64 / 2.0;
            }
            c * (-x).powf(-(n as f64) - 0.5)
        }
        CatalogId::LogGrowth => {
            // f = -alpha/(2x); f^(n) = -alpha/2 * (-1)^n n! x^(-n-1)
            let mut c = -alpha / 2.0;
            for m in 1..=n {
                c *= -(m as f64);
            }
            c * x.powi(-(n as i32) - 1)
        }
        CatalogId::Kink => {
            if x == 0.0 && n >= 1 {
                match side {
                    None => {
                        return Err(Error::NonDifferentiable { x, order: n });
                    }
                    Some(Side::Left) => {
                        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                        s * 0.5
                    }
                    Some(Side::Right) => 0.0,
                }
            } else if x < 0.0 {
                let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                s * 0.5 * (-x).exp()
            } else if n == 0 {
                0.5
            } else {
                0.0
            }
        }
    })
}

/// n-th derivative of tanh x, via the polynomial recurrence in t = tanh x:
/// T_0 = t, T_{n+1} = (1 - t^2) dT_n/dt.
fn tanh_deriv(x: f64, n: usize) -> f64 {
    let t = x.tanh();
    // coefficients of T_n as a polynomial in t
    let mut coeffs: Vec<f64> = vec![0.0, 1.0];
    for _ in 0..n {
        // derivative in t
        let mut d: Vec<f64> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| i as f64 * c)
            .collect();
        if d.is_empty() {
            d.push(0.0);
        }
        // multiply by (1 - t^2)
        let mut next = vec![0.0; d.len() + 2];
        for (i, c) in d.iter().enumerate() {
            next[i] += c;
            next[i + 2] -= c;
        }
        coeffs = next;
    }
    coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, &c| acc * t + c)
}

// ---------------------------------------------------------------------------
// Asymptotic classification
// ---------------------------------------------------------------------------

/// Classification of the behaviour as x -> -inf. Catalog entries return the
/// stored class; expressions are classified by sampling V and f at a
/// geometric sequence of points and demanding monotone trends. Ambiguity is
/// an error, never a guess.
pub fn classify_asymptotics(spec: &PotentialSpec) -> Result<AsymptoticClass> {
    match &spec.source {
        Source::Catalog { id, alpha: _ } => Ok(catalog_class(*id)),
        Source::Expression { ast, .. } => {
            let f_expr = Expr::Div(
                Box::new(Expr::Neg(Box::new(ast.diff()))),
                Box::new(Expr::Num(2.0)),
            );
            let sample_v = |x: f64| ast.eval(x);
            let sample_f = |x: f64| f_expr.eval(x);
            classify_by_sampling(&sample_v, &sample_f)
        }
    }
}

fn catalog_class(id: CatalogId) -> AsymptoticClass {
    use CatalogId::*;
    match id {
        Linear => AsymptoticClass {
            v_limit: VLimit::PlusInfinity,
            f_limit: FLimit::Nonzero(1.0),
            growth: GrowthTag::Linear,
        },
        Parabolic => AsymptoticClass {
            v_limit: VLimit::PlusInfinity,
            f_limit: FLimit::PlusInfinity,
            growth: GrowthTag::Linear,
        },
        ExpGrowth | Kink => AsymptoticClass {
            v_limit: VLimit::PlusInfinity,
            f_limit: FLimit::PlusInfinity,
            growth: GrowthTag::ExponentialOrFaster,
        },
        ExpDecay => AsymptoticClass {
            v_limit: VLimit::Finite(0.0),
            f_limit: FLimit::Zero,
            growth: GrowthTag::ExponentialDecay,
        },
        LogCosh => AsymptoticClass {
            v_limit: VLimit::PlusInfinity,
            f_limit: FLimit::Nonzero(1.0),
            growth: GrowthTag::Linear,
        },
        SqrtGrowth => AsymptoticClass {
            v_limit: VLimit::PlusInfinity,
            f_limit: FLimit::Zero,
            growth: GrowthTag::SublinearSuperlog,
        },
        LogGrowth => AsymptoticClass {
            v_limit: VLimit::PlusInfinity,
            f_limit: FLimit::Zero,
            growth: GrowthTag::LogarithmicOrSlower,
        },
    }
}

/// Sample at x = -2^j, j = 3..20, and classify from monotone trends.
fn classify_by_sampling(
    v: &dyn Fn(f64) -> f64,
    f: &dyn Fn(f64) -> f64,
) -> Result<AsymptoticClass> {
    let xs: Vec<f64> = (3..=20).map(|j| -(2.0_f64.powi(j))).collect();
    let mut vs = Vec::new();
    let mut fs = Vec::new();
    for &x in &xs {
        let vv = v(x);
        let fv = f(x);
        if !vv.is_finite() || !fv.is_finite() {
            break; // overflow counts as fast divergence; use the finite prefix
        }
        vs.push(vv);
        fs.push(fv);
    }
    let overflowed = vs.len() < xs.len();
    if vs.len() < 6 {
        if overflowed {
            // V explodes before we can sample: exponential or faster
            let sign = vs.last().map(|&v| v >= 0.0).unwrap_or(true);
            return Ok(AsymptoticClass {
                v_limit: if sign { VLimit::PlusInfinity } else { VLimit::MinusInfinity },
                f_limit: if sign { FLimit::PlusInfinity } else { FLimit::MinusInfinity },
                growth: GrowthTag::ExponentialOrFaster,
            });
        }
        return Err(Error::Undecidable("too few finite samples".into()));
    }

    let tail = &vs[vs.len().saturating_sub(8)..];
    let ftail = &fs[fs.len().saturating_sub(8)..];
    let xtail = &xs[vs.len().saturating_sub(8)..vs.len()];

    let dv: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    let increasing = dv.iter().all(|&d| d >= -1e-12 * (1.0 + tail[0].abs()));
    let decreasing = dv.iter().all(|&d| d <= 1e-12 * (1.0 + tail[0].abs()));
    if !increasing && !decreasing {
        return Err(Error::Undecidable(
            "V(x) is not eventually monotone along the sample sequence".into(),
        ));
    }

    // V limit: compare increments against a vanishing sequence.
    let last = *tail.last().unwrap();
    let span = (tail[tail.len() - 1] - tail[0]).abs();
    let converges = span <= 1e-6 * (1.0 + last.abs()) || shrinking(&dv);
    let v_limit = if converges {
        VLimit::Finite(last)
    } else if increasing {
        VLimit::PlusInfinity
    } else {
        VLimit::MinusInfinity
    };

    // f limit from the sampled drift.
    let flast = *ftail.last().unwrap();
    let f_limit = if flast.abs() > 1e6 || growing_mag(ftail) {
        if flast > 0.0 {
            FLimit::PlusInfinity
        } else {
            FLimit::MinusInfinity
        }
    } else if flast.abs() < 1e-4 && shrinking_mag(ftail) {
        FLimit::Zero
    } else if stabilizing(ftail) {
        FLimit::Nonzero(flast)
    } else {
        return Err(Error::Undecidable(
            "drift trend at -inf is not monotone".into(),
        ));
    };

    if matches!(v_limit, VLimit::Finite(_)) && !matches!(f_limit, FLimit::Zero) {
        return Err(Error::Undecidable(
            "finite V limit with non-vanishing drift".into(),
        ));
    }

    let growth = match v_limit {
        VLimit::PlusInfinity | VLimit::MinusInfinity => {
            // exponential test: log|f| growing linearly in |x|
            let exp_like = overflowed
                || ftail
                    .iter()
                    .zip(xtail)
                    .rev()
                    .take(3)
                    .all(|(&fv, &x)| fv.abs().max(1e-300).ln() > 0.05 * x.abs());
            if exp_like {
                GrowthTag::ExponentialOrFaster
            } else if matches!(f_limit, FLimit::Zero) {
                // distinguish superlogarithmic from logarithmic: V / log|x|
                let r_first = tail[0] / xtail[0].abs().ln();
                let r_last = last / xtail[xtail.len() - 1].abs().ln();
                if r_last.abs() > 2.0 * r_first.abs() && r_last.abs() > 10.0 {
                    GrowthTag::SublinearSuperlog
                } else {
                    GrowthTag::LogarithmicOrSlower
                }
            } else {
                GrowthTag::Linear
            }
        }
        VLimit::Finite(v0) => {
            // grade |V - V0| against exponentials and powers of |x|
            let d_first = (tail[0] - v0).abs().max(1e-300);
            let d_mid = (tail[tail.len() / 2] - v0).abs().max(1e-300);
            let x_first = xtail[0].abs();
            let x_mid = xtail[tail.len() / 2].abs();
            // power fit: log d vs log |x|
            let p = (d_mid.ln() - d_first.ln()) / (x_mid.ln() - x_first.ln());
            // exponential fit: log d vs |x|
            let e = (d_mid.ln() - d_first.ln()) / (x_mid - x_first);
            if d_mid == 1e-300 || e < -1e-3 {
                GrowthTag::ExponentialDecay
            } else if p < -8.0 {
                GrowthTag::SuperpolynomialDecay
            } else {
                GrowthTag::PowerDecayOrSlower
            }
        }
    };

    Ok(AsymptoticClass {
        v_limit,
        f_limit,
        growth,
    })
}

fn shrinking(d: &[f64]) -> bool {
    d.windows(2).all(|w| w[1].abs() <= 0.9 * w[0].abs() + 1e-300)
}

fn growing_mag(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1].abs() >= 1.2 * w[0].abs()) && v.last().unwrap().abs() > 10.0
}

fn shrinking_mag(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1].abs() <= w[0].abs() * 1.0000001)
}

fn stabilizing(v: &[f64]) -> bool {
    let last = v[v.len() - 1];
    let prev = v[v.len() - 2];
    (last - prev).abs() <= 1e-3 * (1.0 + last.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(name: &str) -> PotentialProfile {
        build_profile(&resolve(name).unwrap(), 8).unwrap()
    }

    #[test]
    fn linear_drift_is_unit() {
        let p = profile("linear");
        assert_eq!(p.eval_f(3.7), 1.0);
        assert_eq!(p.eval_v(1.0), -2.0);
        assert_eq!(p.eval_f_deriv(0.3, 5).unwrap(), 0.0);
    }

    #[test]
    fn exp_growth_drift() {
        let p = profile("exp-growth");
        assert!((p.eval_f(0.0) - 0.5).abs() < 1e-15);
        assert!((p.eval_f_deriv(0.0, 1).unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn logcosh_drift_matches_tanh() {
        let p = profile("logcosh");
        assert!((p.eval_f(-0.5) - 0.5_f64.tanh()).abs() < 1e-14);
        // f' = -(1 - tanh^2)
        let t: f64 = 0.3_f64.tanh();
        assert!((p.eval_f_deriv(0.3, 1).unwrap() + (1.0 - t * t)).abs() < 1e-14);
    }

    #[test]
    fn catalog_first_derivative_matches_central_differences() {
        let names = [
            "linear",
            "parabolic",
            "exp-growth",
            "exp-decay",
            "logcosh",
            "sqrt-growth",
            "log-growth:0.7",
            "kink",
        ];
        let mut state = 0x9e3779b97f4a7c15_u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for name in names {
            let p = profile(name);
            for _ in 0..20 {
                let mut x = -6.0 + 5.5 * rng();
                if p.x_max.is_finite() {
                    x = x.min(-0.2);
                }
                if name == "kink" && x.abs() < 0.05 {
                    x += 0.1; // keep away from the corner
                }
                let h = 1e-5;
                let fd = (p.eval_f(x + h) - p.eval_f(x - h)) / (2.0 * h);
                let sym = p.eval_f_deriv(x, 1).unwrap();
                let tol = 1e-6 * (1.0 + sym.abs());
                assert!(
                    (fd - sym).abs() < tol,
                    "{name} at x={x}: fd {fd} vs sym {sym}"
                );
            }
        }
    }

    #[test]
    fn schrodinger_potential_examples() {
        let lin = profile("linear");
        for &x in &[-4.0, -1.0, 2.0] {
            assert!((schrodinger_potential(&lin, x).unwrap() - 1.0).abs() < 1e-14);
        }
        let par = profile("parabolic");
        for &x in &[-2.0, 0.5] {
            assert!((schrodinger_potential(&par, x).unwrap() - (x * x - 1.0)).abs() < 1e-13);
        }
        let con = build_profile(&parse_potential("3").unwrap(), 4).unwrap();
        for &x in &[-5.0, -1.0, 0.0, 2.0] {
            assert_eq!(schrodinger_potential(&con, x).unwrap(), 0.0);
        }
    }

    #[test]
    fn kink_derivative_requires_side_at_corner() {
        let p = profile("kink");
        assert!(matches!(
            p.eval_f_deriv(0.0, 1),
            Err(Error::NonDifferentiable { .. })
        ));
        assert_eq!(p.eval_f_deriv_side(0.0, 1, Side::Left).unwrap(), -0.5);
        assert_eq!(p.eval_f_deriv_side(0.0, 1, Side::Right).unwrap(), 0.0);
        // f itself is continuous at the corner
        assert_eq!(p.eval_f(0.0), 0.5);
    }

    #[test]
    fn catalog_classifications() {
        let cases: [(&str, VLimit, GrowthTag); 8] = [
            ("linear", VLimit::PlusInfinity, GrowthTag::Linear),
            ("parabolic", VLimit::PlusInfinity, GrowthTag::Linear),
            ("exp-growth", VLimit::PlusInfinity, GrowthTag::ExponentialOrFaster),
            ("exp-decay", VLimit::Finite(0.0), GrowthTag::ExponentialDecay),
            ("logcosh", VLimit::PlusInfinity, GrowthTag::Linear),
            ("sqrt-growth", VLimit::PlusInfinity, GrowthTag::SublinearSuperlog),
            ("log-growth:0.5", VLimit::PlusInfinity, GrowthTag::LogarithmicOrSlower),
            ("kink", VLimit::PlusInfinity, GrowthTag::ExponentialOrFaster),
        ];
        for (name, vlim, tag) in cases {
            let c = classify_asymptotics(&resolve(name).unwrap()).unwrap();
            assert_eq!(c.v_limit, vlim, "{name}");
            assert_eq!(c.growth, tag, "{name}");
        }
        let c = classify_asymptotics(&resolve("sqrt-growth").unwrap()).unwrap();
        assert_eq!(c.f_limit, FLimit::Zero);
    }

    #[test]
    fn expression_classification_matches_catalog() {
        let pairs = [
            ("-2*x", "linear"),
            ("x^2", "parabolic"),
            ("exp(-x)", "exp-growth"),
            ("exp(x)", "exp-decay"),
            ("sqrt(-x)", "sqrt-growth"),
        ];
        for (text, name) in pairs {
            let got = classify_asymptotics(&parse_potential(text).unwrap()).unwrap();
            let want = classify_asymptotics(&catalog(name).unwrap()).unwrap();
            assert_eq!(got.v_limit, want.v_limit, "{text}");
            assert_eq!(got.growth, want.growth, "{text}");
        }
    }

    #[test]
    fn mirror_flips_drift_sign() {
        let p = profile("logcosh");
        let m = p.mirrored().unwrap();
        // V even: V_m = V, f_m(x) = -f(-x) = -(-tanh(-x)) = -tanh(x) = f(x)
        assert!((m.eval_f(0.7) - p.eval_f(0.7)).abs() < 1e-14);
        assert!((m.eval_v(-1.2) - p.eval_v(-1.2)).abs() < 1e-14);
        let lin = profile("linear");
        let ml = lin.mirrored().unwrap();
        assert_eq!(ml.eval_f(2.0), -1.0);
        assert_eq!(ml.class.v_limit, VLimit::MinusInfinity);
    }
}
