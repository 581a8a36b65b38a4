//! Integer helpers and dense univariate polynomials over prime fields.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, e)` when `n = p^e` with `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut k = 0;
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    k
}

/// Dense polynomials over GF(p), coefficients in ascending degree order.
pub mod poly {
    use super::inv_mod;

    pub fn trim(mut f: Vec<u64>) -> Vec<u64> {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn degree(f: &[u64]) -> Option<usize> {
        f.iter().rposition(|&c| c != 0)
    }

    pub fn mul(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        trim(out)
    }

    /// Remainder of `f` modulo a nonzero `g`.
    pub fn rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
        let dg = degree(g).expect("division by zero polynomial");
        let lead_inv = inv_mod(g[dg], p).expect("leading coefficient is a unit mod p");
        let mut r: Vec<u64> = f.iter().map(|c| c % p).collect();
        while let Some(dr) = degree(&r) {
            if dr < dg {
                break;
            }
            let c = r[dr] * lead_inv % p;
            let shift = dr - dg;
            for (j, &gj) in g.iter().enumerate().take(dg + 1) {
                r[shift + j] = (r[shift + j] + p * p - c * gj % p) % p;
            }
        }
        trim(r)
    }

    /// Irreducibility by trial division against every monic polynomial of
    /// degree at most half of `deg f`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let Some(d) = degree(f) else { return false };
        if d == 0 {
            return false;
        }
        for dg in 1..=d / 2 {
            for g in monic_of_degree(dg, p) {
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// All monic polynomials of the given degree, in lexicographic order of
    /// their lower coefficients.
    pub fn monic_of_degree(d: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
        let count = p.pow(d as u32);
        (0..count).map(move |mut idx| {
            let mut f = vec![0u64; d + 1];
            for c in f.iter_mut().take(d) {
                *c = idx % p;
                idx /= p;
            }
            f[d] = 1;
            f
        })
    }

    pub fn first_irreducible(d: usize, p: u64) -> Vec<u64> {
        monic_of_degree(d, p)
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree")
    }

    /// Factor a monic polynomial into powers of monic irreducibles.
    pub fn factor(f: &[u64], p: u64) -> Vec<(Vec<u64>, u32)> {
        let mut rest = trim(f.to_vec());
        let mut out = Vec::new();
        let total = degree(&rest).unwrap_or(0);
        for d in 1..=total {
            if degree(&rest).unwrap_or(0) == 0 {
                break;
            }
            for g in monic_of_degree(d, p) {
                if !is_irreducible(&g, p) {
                    continue;
                }
                let mut k = 0;
                while rem(&rest, &g, p).is_empty() {
                    rest = div_exact(&rest, &g, p);
                    k += 1;
                }
                if k > 0 {
                    out.push((g, k));
                }
            }
        }
        out
    }

    fn div_exact(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
        let dg = degree(g).unwrap();
        let lead_inv = inv_mod(g[dg], p).unwrap();
        let mut r: Vec<u64> = f.to_vec();
        let df = degree(f).unwrap_or(0);
        let mut q = vec![0u64; df.saturating_sub(dg) + 1];
        while let Some(dr) = degree(&r) {
            if dr < dg {
                break;
            }
            let c = r[dr] * lead_inv % p;
            q[dr - dg] = c;
            for (j, &gj) in g.iter().enumerate().take(dg + 1) {
                r[dr - dg + j] = (r[dr - dg + j] + p * p - c * gj % p) % p;
            }
        }
        trim(q)
    }

    /// Render with the highest degree first, e.g. `x^3+2*x+1`.
    pub fn render(f: &[u64]) -> String {
        let mut terms = Vec::new();
        for (k, &c) in f.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (c, k) {
                (c, 0) => c.to_string(),
                (1, 1) => "x".to_string(),
                (c, 1) => format!("{c}*x"),
                (1, k) => format!("x^{k}"),
                (c, k) => format!("{c}*x^{k}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}
