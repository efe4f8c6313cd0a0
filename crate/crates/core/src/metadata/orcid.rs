//! ORCID identifiers: `dddd-dddd-dddd-dddX` with an ISO 7064 mod 11-2 check
//! character.

use crate::vocab::ORCID_BASE;

/// Check character for the first 15 digits.
pub fn check_digit(digits: &[u8]) -> char {
    let mut total: u32 = 0;
    for d in digits {
        total = (total + u32::from(*d)) * 2;
    }
    let result = (12 - total % 11) % 11;
    if result == 10 {
        'X'
    } else {
        char::from_digit(result, 10).expect("single digit")
    }
}

/// Shape and checksum.
pub fn is_valid_orcid(id: &str) -> bool {
    let bytes = id.as_bytes();
    if bytes.len() != 19 {
        return false;
    }
    let mut digits = Vec::with_capacity(15);
    for (i, &b) in bytes.iter().enumerate() {
        match i {
            4 | 9 | 14 => {
                if b != b'-' {
                    return false;
                }
            }
            18 => {}
            _ => {
                if !b.is_ascii_digit() {
                    return false;
                }
                digits.push(b - b'0');
            }
        }
    }
    check_digit(&digits) == bytes[18] as char
}

/// Strips an `orcid.org` URL prefix if present.
pub fn bare_orcid(value: &str) -> &str {
    let v = value.trim();
    for prefix in [ORCID_BASE, "http://orcid.org/"] {
        if let Some(rest) = v.strip_prefix(prefix) {
            return rest;
        }
    }
    v
}

pub fn orcid_url(id: &str) -> String {
    format!("{ORCID_BASE}{id}")
}
