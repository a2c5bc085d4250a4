use num_bigint::BigUint;

/// Parses a non-negative integer in decimal or `0x`-prefixed hexadecimal.
pub fn parse_number(s: &str) -> Result<BigUint, String> {
    let s = s.trim();
    let (digits, radix) = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => (hex, 16),
        None => (s, 10),
    };
    if digits.is_empty() || !digits.chars().all(|c| c.is_digit(radix)) {
        return Err(format!("invalid number '{s}'"));
    }
    BigUint::parse_bytes(digits.as_bytes(), radix).ok_or_else(|| format!("invalid number '{s}'"))
}
