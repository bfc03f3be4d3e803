/// Associated Laguerre polynomial `L_n^α(x)` by three-term recurrence.
pub fn laguerre_eval(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial `P_n^{(α,β)}(x)` by three-term recurrence.
pub fn jacobi_eval(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x;
    let ab = alpha + beta;
    for k in 1..n {
        let k = f64::from(k);
        let c = 2.0 * k + ab;
        let a1 = 2.0 * (k + 1.0) * (k + ab + 1.0) * c;
        let a2 = (c + 1.0) * (alpha * alpha - beta * beta);
        let a3 = c * (c + 1.0) * (c + 2.0);
        let a4 = 2.0 * (k + alpha) * (k + beta) * (c + 2.0);
        let next = ((a2 + a3 * x) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dx P_n^{(α,β)}(x) = ½(n + α + β + 1) P_{n−1}^{(α+1,β+1)}(x)`.
pub fn jacobi_derivative(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    0.5 * (f64::from(n) + alpha + beta + 1.0) * jacobi_eval(n - 1, alpha + 1.0, beta + 1.0, x)
}
