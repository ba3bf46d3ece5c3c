//! Rigorous enclosures of Ai and Ai'.
//!
//! Two routes: the Maclaurin series `Ai = c1 f - c2 g` with the working
//! precision padded for the cancellation between `f` and `g`, and for large
//! positive arguments the asymptotic expansion in `1/zeta`, whose remainder
//! for real positive `x` is bounded by the first neglected term.

use std::f64::consts::{LN_2, LOG2_E};

use rug::float::Round;
use rug::ops::{AddAssignRound, DivAssignRound, MulAssignRound};
use rug::Float;

use super::interval::Interval;
use crate::{Error, Result};

/// Smallest argument accepted by the series route.
pub const AIRY_MIN_X: f64 = -64.0;

const GUARD: u32 = 32;

#[derive(Clone, Debug)]
pub struct Airy {
    prec: u32,
    const_prec: u32,
    c1: Interval,
    c2: Interval,
}

fn gamma_constants(wp: u32) -> (Interval, Interval) {
    // Gamma is decreasing on (0, 1.46), so an enclosure of t gives one of Gamma(t).
    let gamma_enclosure = |t: &Interval| {
        let lo = Float::with_val_round(wp, t.hi().gamma_ref(), Round::Down).0;
        let hi = Float::with_val_round(wp, t.lo().gamma_ref(), Round::Up).0;
        Interval::new(lo, hi)
    };
    let g13 = gamma_enclosure(&Interval::from_ratio(wp, 1, 3));
    let g23 = gamma_enclosure(&Interval::from_ratio(wp, 2, 3));
    let cbrt3 = Interval::from_i64(wp, 3).cbrt();
    let c1 = (&cbrt3.square() * &g23).recip();
    let c2 = (&cbrt3 * &g13).recip();
    (c1, c2)
}

/// Sums a series whose term ratio is `x3 / den(k)` for `k = 1, 2, ...`.
/// `den` must be increasing; the tail is bounded geometrically once the
/// ratio drops to 1/2.
fn series(first: Interval, x3: &Interval, wp: u32, den: impl Fn(i64) -> i64) -> Interval {
    let x3mag = x3.mag();
    let tol = Float::with_val(wp, 1) >> (wp as i32);
    let mut sum = first.clone();
    let mut term = first;
    let mut k = 1i64;
    loop {
        let d = den(k);
        term = (&term * x3).div_i64(d);
        sum = &sum + &term;
        k += 1;
        let ratio = Float::with_val(53, &x3mag / den(k));
        if ratio <= 0.5 {
            let tail = Float::with_val(wp, term.mag() * &ratio) * 2u32;
            if tail < tol || term.mag() == 0 {
                return sum.inflate(&tail);
            }
        }
    }
}

type Pair = (Interval, Option<Interval>);

/// Same sum for a point argument with `x3 >= 0`: every term is
/// nonnegative, so lower and upper sums are accumulated in place with
/// directed rounding.
fn series_nonneg(first: &Interval, x3: &Interval, wp: u32, den: impl Fn(i64) -> i64) -> Interval {
    let x3f = x3.hi().to_f64_round(Round::Up);
    let (mut slo, mut shi) = (
        Float::with_val(wp, first.lo()),
        Float::with_val(wp, first.hi()),
    );
    let (mut tlo, mut thi) = (slo.clone(), shi.clone());
    let mut k = 1i64;
    loop {
        let d = den(k) as u32;
        tlo.mul_assign_round(x3.lo(), Round::Down);
        tlo.div_assign_round(d, Round::Down);
        thi.mul_assign_round(x3.hi(), Round::Up);
        thi.div_assign_round(d, Round::Up);
        slo.add_assign_round(&tlo, Round::Down);
        shi.add_assign_round(&thi, Round::Up);
        k += 1;
        // Next ratio, rounded up in f64 with margin.
        let ratio = x3f / den(k) as f64 * (1.0 + 1e-12);
        if ratio <= 0.5 && (thi.is_zero() || thi.get_exp().unwrap() < -(wp as i32)) {
            // tail <= 2 * ratio * last term <= last term
            shi.add_assign_round(&thi, Round::Up);
            return Interval::new(slo, shi);
        }
    }
}

/// Series pieces `f, g` and optionally `f', g'` at `x`.
fn maclaurin_pieces(x: &Interval, wp: u32, deriv: bool) -> ([Interval; 2], Option<[Interval; 2]>) {
    let x = x.with_prec(wp);
    let x2 = x.square();
    let x3 = &x2 * &x;
    let one = Interval::from_i64(wp, 1);
    let sum = |first: &Interval, den: fn(i64) -> i64| {
        if x.is_point() && x.is_nonnegative() {
            series_nonneg(first, &x3, wp, den)
        } else {
            series(first.clone(), &x3, wp, den)
        }
    };
    let f = sum(&one, |k| (3 * k - 1) * (3 * k));
    let g = sum(&x, |k| (3 * k) * (3 * k + 1));
    let d = deriv.then(|| {
        let fp = sum(&x2.div_i64(2), |k| (3 * k) * (3 * k + 2));
        let gp = sum(&one, |k| (3 * k - 2) * (3 * k));
        [fp, gp]
    });
    ([f, g], d)
}

fn zeta_f64(x: f64) -> f64 {
    2.0 / 3.0 * x.abs().powf(1.5)
}

impl Airy {
    /// Evaluator returning enclosures rounded to `prec` bits.
    pub fn new(prec: u32) -> Self {
        let const_prec = 2 * prec + 4 * GUARD;
        let (c1, c2) = gamma_constants(const_prec);
        Airy {
            prec,
            const_prec,
            c1,
            c2,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    fn constants(&self, wp: u32) -> (Interval, Interval) {
        if wp <= self.const_prec {
            (self.c1.with_prec(wp), self.c2.with_prec(wp))
        } else {
            gamma_constants(wp)
        }
    }

    fn asymptotic_switch(&self) -> f64 {
        (self.prec + 24) as f64 * LN_2 / 2.0 + 2.0
    }

    /// `(Ai(x), Ai'(x))` for an exact argument.
    pub fn eval_point(&self, x: &Float) -> Result<(Interval, Interval)> {
        self.point_impl(x, true).map(|(a, d)| (a, d.unwrap()))
    }

    fn combine(&self, wp: u32, pieces: ([Interval; 2], Option<[Interval; 2]>)) -> Pair {
        let (c1, c2) = self.constants(wp);
        let ([f, g], d) = pieces;
        let ai = &(&c1 * &f) - &(&c2 * &g);
        let aip = d.map(|[fp, gp]| (&(&c1 * &fp) - &(&c2 * &gp)).with_prec(self.prec));
        (ai.with_prec(self.prec), aip)
    }

    fn point_impl(&self, x: &Float, deriv: bool) -> Result<Pair> {
        let xf = x.to_f64();
        if !x.is_finite() || xf < AIRY_MIN_X {
            return Err(Error::Domain(format!(
                "Airy argument {xf} outside [{AIRY_MIN_X}, inf)"
            )));
        }
        if xf > 0.0 && zeta_f64(xf) >= self.asymptotic_switch() {
            return Ok(self.asymptotic(x, deriv));
        }
        let pad = (2.0 * zeta_f64(xf) * LOG2_E).ceil() as u32;
        let wp = (self.prec + pad + GUARD).max(x.prec());
        let pieces = maclaurin_pieces(&Interval::point(x.clone()), wp, deriv);
        Ok(self.combine(wp, pieces))
    }

    fn asymptotic(&self, x: &Float, deriv: bool) -> Pair {
        let wp = (self.prec + GUARD).max(x.prec());
        let xi = Interval::point(x.clone()).with_prec(wp);
        let sqrt_x = xi.sqrt();
        let zeta = (&xi * &sqrt_x).mul_i64(2).div_i64(3);
        let rz = zeta.recip();
        let tol = Float::with_val(wp, 1) >> ((self.prec + 16) as i32);
        // u_k zeta^-k and v_k zeta^-k, with alternating signs folded in.
        let mut s_u = Interval::from_i64(wp, 1);
        let mut s_v = Interval::from_i64(wp, 1);
        let mut u = Interval::from_i64(wp, 1);
        let mut err_u;
        let mut err_v;
        let mut k = 1i64;
        loop {
            u = (&u * &rz).mul_i64((6 * k - 5) * (6 * k - 3) * (6 * k - 1));
            u = u.div_i64((2 * k - 1) * 216 * k);
            let v = u.mul_i64(-(6 * k + 1)).div_i64(6 * k - 1);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            err_u = u.mag();
            err_v = if deriv { v.mag() } else { Float::new(wp) };
            // Past the smallest term the bound only grows.
            if (err_u < tol && err_v < tol) || k as f64 >= 2.0 * zeta.to_f64() {
                break;
            }
            s_u = &s_u + &u.mul_i64(sign);
            s_v = &s_v + &v.mul_i64(sign);
            k += 1;
        }
        let s_u = s_u.inflate(&err_u);
        let s_v = s_v.inflate(&err_v);
        let two_sqrt_pi = Interval::pi(wp).sqrt().mul_i64(2);
        let e = (-&zeta).exp().div(&two_sqrt_pi);
        let q = sqrt_x.sqrt();
        let ai = (&e * &s_u).div(&q);
        let aip = deriv.then(|| (-(&(&e * &s_v) * &q)).with_prec(self.prec));
        (ai.with_prec(self.prec), aip)
    }

    /// `(Ai(X), Ai'(X))` over an interval argument.
    pub fn eval(&self, x: &Interval) -> Result<(Interval, Interval)> {
        self.eval_impl(x, true).map(|(a, d)| (a, d.unwrap()))
    }

    /// `Ai(X)` alone, about half the work of [`Airy::eval`].
    pub fn ai(&self, x: &Interval) -> Result<Interval> {
        self.eval_impl(x, false).map(|v| v.0)
    }

    fn eval_impl(&self, x: &Interval, deriv: bool) -> Result<Pair> {
        if x.is_point() {
            return self.point_impl(x.lo(), deriv);
        }
        if x.lo().to_f64() < AIRY_MIN_X || !x.is_finite() {
            return Err(Error::Domain(format!(
                "Airy argument {x} outside [{AIRY_MIN_X}, inf)"
            )));
        }
        if x.is_nonnegative() && !deriv {
            // One evaluation at a point c <= lo and a width correction:
            // on [0, inf) Ai decreases and is convex, and |Ai'| <= |Ai'(0)| < 0.26.
            // The crude slope bound needs a much narrower interval than the
            // convexity bound, which is relative.
            let asymptotic = zeta_f64(x.lo().to_f64()) >= self.asymptotic_switch() + 1.0;
            let cp = self.prec + if asymptotic { GUARD } else { 4 * GUARD };
            let c = Float::with_val_round(cp, x.lo(), Round::Down).0;
            let w = Float::with_val_round(self.prec, x.hi() - &c, Round::Up).0;
            let (a, ap) = self.point_impl(&c, asymptotic)?;
            let drop = match ap {
                Some(ap) => Float::with_val_round(self.prec, ap.lo() * &w, Round::Down).0,
                None => -Float::with_val_round(self.prec, &w * 0.26f64, Round::Up).0,
            };
            let lo = Float::with_val_round(self.prec, a.lo() + &drop, Round::Down).0;
            return Ok((Interval::new(lo, a.hi().clone()), None));
        }
        if x.is_nonnegative() {
            // Ai decreases and Ai' increases on [0, inf).
            let (a_lo, ap_lo) = self.point_impl(x.lo(), deriv)?;
            let (a_hi, ap_hi) = self.point_impl(x.hi(), deriv)?;
            let aip = ap_lo
                .zip(ap_hi)
                .map(|(l, h)| Interval::new(l.lo().clone(), h.hi().clone()));
            return Ok((Interval::new(a_hi.lo().clone(), a_lo.hi().clone()), aip));
        }
        if *x.hi() > 0 {
            let p = x.prec();
            let left = self.eval_impl(&Interval::new(x.lo().clone(), Float::new(p)), deriv)?;
            let right = self.eval_impl(&Interval::new(Float::new(p), x.hi().clone()), deriv)?;
            let aip = left.1.zip(right.1).map(|(l, r)| l.hull(&r));
            return Ok((left.0.hull(&right.0), aip));
        }
        let pad = (2.0 * zeta_f64(x.lo().to_f64()) * LOG2_E).ceil() as u32;
        let wp = self.prec + pad + GUARD;
        Ok(self.combine(wp, maclaurin_pieces(x, wp, deriv)))
    }

    pub fn ai_prime(&self, x: &Interval) -> Result<Interval> {
        self.eval(x).map(|v| v.1)
    }
}

/// Enclosure of Ai(x) to `prec` bits.
pub fn airy_ai(x: &Float, prec: u32) -> Result<Interval> {
    Airy::new(prec).eval_point(x).map(|v| v.0)
}

/// Enclosure of Ai'(x) to `prec` bits.
pub fn airy_ai_prime(x: &Float, prec: u32) -> Result<Interval> {
    Airy::new(prec).eval_point(x).map(|v| v.1)
}

/// Zero of an increasing function in `[lo, hi]`, given `(value, slope)`
/// enclosures at points. Returns `[x - delta, x + delta]` with the sign
/// change certified at both ends.
fn certified_zero(
    f: impl Fn(&Float, u32) -> Result<(Interval, Interval)>,
    lo: f64,
    hi: f64,
    prec: u32,
) -> Result<Interval> {
    let wp = prec + GUARD;
    let (mut a, mut b) = (Float::with_val(wp, lo), Float::with_val(wp, hi));
    // Coarse bisection at low precision.
    for _ in 0..48 {
        let mid = Float::with_val(wp, &a + &b) / 2u32;
        let (v, _) = f(&mid, 96)?;
        match v.sign() {
            Some(std::cmp::Ordering::Less) => a = mid,
            Some(std::cmp::Ordering::Greater) => b = mid,
            _ => break,
        }
    }
    let mut x = Float::with_val(wp, &a + &b) / 2u32;
    let mut bits = 48u32;
    while bits < 2 * wp {
        let (v, d) = f(&x, wp + GUARD)?;
        x -= v.mid() / d.mid();
        bits *= 2;
    }
    let delta = Float::with_val(wp, 1) >> ((prec + 4) as i32);
    let left = Float::with_val(wp, &x - &delta);
    let right = Float::with_val(wp, &x + &delta);
    let (vl, _) = f(&left, wp + GUARD)?;
    let (vr, _) = f(&right, wp + GUARD)?;
    if !(vl.is_negative() && vr.is_positive()) {
        return Err(Error::Precision(format!(
            "could not certify a sign change at {prec} bits; retry with more precision"
        )));
    }
    Ok(Interval::new(left, right))
}

/// The largest zero `a1` of Ai, as an enclosure of width `2^(-prec-3)`.
pub fn airy_root_a1(prec: u32) -> Result<Interval> {
    let prec = prec.max(64);
    certified_zero(|x, p| Airy::new(p).eval_point(x), -2.4, -2.3, prec)
}

/// The largest zero `a1'` of Ai'.
pub fn airy_prime_root(prec: u32) -> Result<Interval> {
    let prec = prec.max(64);
    // Ai' is increasing near its largest zero since Ai'' = x Ai < 0 there
    // and Ai > 0, so the negated function is the increasing one.
    certified_zero(
        |x, p| {
            let (ai, aip) = Airy::new(p).eval_point(x)?;
            let slope = &Interval::point(x.clone()) * &ai;
            Ok((-aip, -slope))
        },
        -1.1,
        -0.9,
        prec,
    )
}

/// `Phi(x) = x Ai'(a1 + x) / Ai(a1 + x)`, with `Phi(0) = 1`.
pub fn phi(x: &Float, prec: u32) -> Result<Interval> {
    if *x == 0 {
        return Ok(Interval::from_i64(prec, 1));
    }
    let ratio = psi(x, prec)?;
    Ok((&ratio * &Interval::point(Float::with_val(prec + GUARD, x))).with_prec(prec))
}

/// `Psi(x) = Ai'(a1 + x) / Ai(a1 + x)`.
pub fn psi(x: &Float, prec: u32) -> Result<Interval> {
    if *x <= 0 {
        return Err(Error::Domain(format!("Psi needs x > 0, got {x}")));
    }
    let wp = prec + GUARD;
    let a1 = airy_root_a1(wp)?;
    let arg = &a1 + &Interval::point(Float::with_val(wp, x));
    let (ai, aip) = Airy::new(wp).eval(&arg)?;
    Ok(aip.div(&ai).with_prec(prec))
}

/// The unique positive zero of Psi, `x0 = a1' - a1`.
pub fn psi_root_x0(prec: u32) -> Result<Interval> {
    let wp = prec + GUARD;
    let a1 = airy_root_a1(wp)?;
    let a1p = airy_prime_root(wp)?;
    Ok((&a1p - &a1).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mpfr_ai(x: f64, prec: u32) -> Float {
        Float::with_val(prec, x).ai()
    }

    #[test]
    fn ai_at_zero() {
        let v = airy_ai(&Float::new(64), 128).unwrap();
        assert!((v.to_f64() - 0.3550280538878172).abs() < 1e-15);
        let d = airy_ai_prime(&Float::new(64), 128).unwrap();
        assert!((d.to_f64() + 0.2588194037928068).abs() < 1e-15);
    }

    #[test]
    fn matches_mpfr_across_routes() {
        let airy = Airy::new(128);
        for &x in &[
            -30.5, -7.25, -2.0, -0.5, 0.75, 3.0, 11.0, 20.0, 24.5, 40.0, 90.0,
        ] {
            let want = mpfr_ai(x, 200);
            let got = airy.eval_point(&Float::with_val(64, x)).unwrap().0;
            let tol = Float::with_val(200, want.abs_ref()) >> 110;
            assert!(got.inflate(&tol).contains(&want), "x={x}: {got} vs {want}");
            assert!(
                got.width() < Float::with_val(200, want.abs_ref()) >> 100,
                "x={x}"
            );
        }
    }

    #[test]
    fn derivative_matches_mpfr_differences() {
        let airy = Airy::new(128);
        let h: Float = Float::with_val(300, 1) >> 60;
        for &x in &[-12.0, -2.0, 0.5, 6.0, 22.0, 30.0] {
            let xp = Float::with_val(300, x) + &h;
            let xm = Float::with_val(300, x) - &h;
            let diff = (xp.ai() - xm.ai()) / (Float::with_val(300, &h) * 2u32);
            let got = airy.eval_point(&Float::with_val(64, x)).unwrap().1.mid();
            let rel = Float::with_val(128, (got - &diff) / &diff).abs();
            assert!(rel < 1e-30, "x={x}: rel {rel}");
        }
    }

    #[test]
    fn interval_arguments_enclose_points() {
        let airy = Airy::new(96);
        let lo = Float::with_val(96, 2.5);
        let hi = Float::with_val(96, 2.5 + 1e-20);
        let (ai, aip) = airy.eval(&Interval::new(lo.clone(), hi)).unwrap();
        let (p, pd) = airy.eval_point(&lo).unwrap();
        assert!(ai.contains(p.lo()) && aip.contains(pd.lo()));
        for &x in &[0.5, 9.0, 23.0, 31.0, 70.0] {
            let lo = Float::with_val(300, x);
            let hi = Float::with_val(300, &lo + (Float::with_val(300, 1) >> 250));
            let want = lo.clone().ai();
            let got = airy.ai(&Interval::new(lo, hi)).unwrap();
            assert!(got.contains(&want), "x={x}");
            assert!(
                got.width() < Float::with_val(96, want.abs_ref()) >> 80,
                "x={x}"
            );
        }
        let straddle = Interval::new(Float::with_val(96, -1e-10), Float::with_val(96, 1e-10));
        let (z, _) = airy.eval(&straddle).unwrap();
        assert!(z.contains(&Float::with_val(96, 0.3550280538878172)));
        assert!(airy.eval_point(&Float::with_val(53, -65)).is_err());
    }

    #[test]
    fn ode_residual_by_second_differences() {
        let airy = Airy::new(160);
        let h: Float = Float::with_val(160, 1) >> 30;
        for &x in &[-2.0, 0.0, 1.0, 5.0] {
            let x = Float::with_val(160, x);
            let at = |t: Float| airy.eval_point(&t).unwrap().0.mid();
            let second = (at(Float::with_val(160, &x + &h)) - at(x.clone()) * 2u32
                + at(Float::with_val(160, &x - &h)))
                / Float::with_val(160, h.square_ref());
            let want = at(x.clone()) * &x;
            assert!((second - want).abs() < 1e-15);
        }
    }

    #[test]
    fn a1_digits_and_stability() {
        let a = airy_root_a1(128).unwrap();
        let b = airy_root_a1(192).unwrap();
        assert!((a.to_f64() + 2.338107410459767).abs() < 1e-14);
        assert!((&a - &b).mag() < Float::with_val(64, 1) >> 120);
        let at = Airy::new(128).eval(&a).unwrap();
        assert!(at.0.contains_zero());
        assert!(at.1.is_positive());
    }

    #[test]
    fn phi_and_psi() {
        assert_eq!(phi(&Float::new(53), 64).unwrap().to_f64(), 1.0);
        let x0 = psi_root_x0(96).unwrap();
        assert!((x0.to_f64() - 1.3193144388123).abs() < 1e-12);
        assert!(psi(&Float::with_val(53, 0.5), 96).unwrap().is_positive());
        assert!(psi(&Float::with_val(53, 2.0), 96).unwrap().is_negative());
    }
}
