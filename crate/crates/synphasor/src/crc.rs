//! CRC-16/CCITT-FALSE as used for the CHK field of every frame:
//! polynomial 0x1021, initial value 0xFFFF, no reflection, no final xor.

const POLY: u16 = 0x1021;
const INIT: u16 = 0xFFFF;

const fn build_table() -> [u16; 256] {
    let mut table = [0u16; 256];
    let mut i = 0;
    while i < 256 {
        let mut crc = (i as u16) << 8;
        let mut bit = 0;
        while bit < 8 {
            crc = if crc & 0x8000 != 0 {
                (crc << 1) ^ POLY
            } else {
                crc << 1
            };
            bit += 1;
        }
        table[i] = crc;
        i += 1;
    }
    table
}

static TABLE: [u16; 256] = build_table();

/// CRC over the frame bytes excluding the trailing two CHK bytes.
pub fn compute_crc(payload: &[u8]) -> u16 {
    let mut crc = INIT;
    for &byte in payload {
        let idx = ((crc >> 8) ^ byte as u16) & 0xFF;
        crc = (crc << 8) ^ TABLE[idx as usize];
    }
    crc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_value() {
        assert_eq!(compute_crc(b"123456789"), 0x29B1);
    }

    #[test]
    fn empty_payload_is_init() {
        assert_eq!(compute_crc(&[]), 0xFFFF);
    }

    #[test]
    fn single_bit_flip_changes_crc() {
        let payload = b"\xaa\x41\x00\x12synchrophasor";
        let base = compute_crc(payload);
        for i in 0..payload.len() {
            for bit in 0..8 {
                let mut mutated = payload.to_vec();
                mutated[i] ^= 1 << bit;
                assert_ne!(compute_crc(&mutated), base, "byte {i} bit {bit}");
            }
        }
    }
}
