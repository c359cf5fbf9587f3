//! Natural cubic spline over a tabulated mass profile, giving the custom
//! profile the twice-differentiable interpolant its potential needs.

#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    second: Vec<f64>,
}

impl CubicSpline {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, String> {
        let n = xs.len();
        if n < 3 || ys.len() != n {
            return Err("spline needs at least 3 matched (x, y) samples".into());
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err("spline abscissae must be strictly increasing".into());
        }
        // tridiagonal solve for natural boundary conditions
        let mut u = vec![0.0_f64; n];
        let mut second = vec![0.0_f64; n];
        for i in 1..n - 1 {
            let sig = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
            let p = sig * second[i - 1] + 2.0;
            second[i] = (sig - 1.0) / p;
            let d = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
                - (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
            u[i] = (6.0 * d / (xs[i + 1] - xs[i - 1]) - sig * u[i - 1]) / p;
        }
        for i in (0..n - 1).rev() {
            second[i] = second[i] * second[i + 1] + u[i];
        }
        Ok(Self { xs, ys, second })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        // clamp outside the table to the boundary values
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.xs[mid] > x {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let h = self.xs[hi] - self.xs[lo];
        let a = (self.xs[hi] - x) / h;
        let b = (x - self.xs[lo]) / h;
        a * self.ys[lo]
            + b * self.ys[hi]
            + ((a * a * a - a) * self.second[lo] + (b * b * b - b) * self.second[hi]) * h * h
                / 6.0
    }
}

/// Parses a two-column text table (y, m(y)); '#' lines are comments.
pub fn parse_mass_table(text: &str) -> Result<(Vec<f64>, Vec<f64>), String> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let x: f64 = parts
            .next()
            .ok_or_else(|| format!("line {}: missing y column", i + 1))?
            .parse()
            .map_err(|e| format!("line {}: {e}", i + 1))?;
        let y: f64 = parts
            .next()
            .ok_or_else(|| format!("line {}: missing m column", i + 1))?
            .parse()
            .map_err(|e| format!("line {}: {e}", i + 1))?;
        if y <= 0.0 {
            return Err(format!("line {}: mass must be positive, got {y}", i + 1));
        }
        xs.push(x);
        ys.push(y);
    }
    if xs.len() < 3 {
        return Err("mass table needs at least 3 samples".into());
    }
    Ok((xs, ys))
}
