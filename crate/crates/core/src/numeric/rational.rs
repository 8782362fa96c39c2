use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Exact conversion of a finite double.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

/// `"num/den"`, or just `"num"` for integers.
pub fn rational_string(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"a"`, `"a/b"` or a plain decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut n: BigInt = digits.parse().ok()?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(n, d));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

fn eliminate(rows: &mut [Vec<Rational>], cols: usize) -> (usize, bool) {
    // Row-reduces in place; returns (rank, whether an odd number of swaps occurred).
    let mut rank = 0;
    let mut odd = false;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            rows.swap(pivot, rank);
            odd = !odd;
        }
        let inv = rows[rank][col].recip();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            for c in col..rows[r].len() {
                let delta = &factor * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    (rank, odd)
}

/// Rank of a dense rational matrix by exact Gaussian elimination.
pub fn rank_exact(a: &[Vec<Rational>]) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows = a.to_vec();
    eliminate(&mut rows, cols).0
}

/// Determinant of a square rational matrix.
pub fn det_exact(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut rows = a.to_vec();
    let (rank, odd) = eliminate(&mut rows, n);
    if rank < n {
        return Rational::zero();
    }
    let mut det = (0..n).fold(BigRational::from_integer(1.into()), |acc, i| acc * &rows[i][i]);
    if odd {
        det = -det;
    }
    det
}

/// Solves `a x = b` exactly; `None` when `a` is singular.
pub fn solve_exact(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (rank, _) = eliminate(&mut rows, n);
    if rank < n {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = rows[i][n].clone();
        for j in i + 1..n {
            acc -= &rows[i][j] * &x[j];
        }
        x[i] = acc / &rows[i][i];
    }
    Some(x)
}
