/// A point of the integer lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

/// `floor(sqrt(n))`, exact for every `u64`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while (r as u128) * (r as u128) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) <= n as u128 {
        r += 1;
    }
    r
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Twice the signed area of the triangle `o, a, b` (positive when counter-clockwise).
#[inline]
pub fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    (a.x - o.x) as i128 * (b.y - o.y) as i128 - (a.y - o.y) as i128 * (b.x - o.x) as i128
}

/// `floor(num / den)` for `den > 0`.
#[inline]
pub(crate) fn floor_div(num: i128, den: i128) -> i128 {
    num.div_euclid(den)
}

/// `ceil(num / den)` for `den > 0`.
#[inline]
pub(crate) fn ceil_div(num: i128, den: i128) -> i128 {
    -(-num).div_euclid(den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_small() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
    }

    #[test]
    fn isqrt_large() {
        let r = 3_037_000_499u64;
        assert_eq!(isqrt(r * r), r);
        assert_eq!(isqrt(r * r - 1), r - 1);
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
        assert_eq!(isqrt(1u64 << 63), 3_037_000_499);
    }

    #[test]
    fn rounding_divisions() {
        assert_eq!(floor_div(-7, 2), -4);
        assert_eq!(ceil_div(-7, 2), -3);
        assert_eq!(ceil_div(7, 2), 4);
        assert_eq!(floor_div(6, 3), 2);
    }
}
