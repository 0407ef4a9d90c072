//! Spacetime diagrams as images: one pixel row per time step, 1 = black.

use crate::ca::SpacetimeHistory;

/// Pixel matrix of a history, each cell drawn as a `scale` x `scale` block.
pub fn pixels(history: &SpacetimeHistory, scale: usize) -> (usize, usize, Vec<bool>) {
    let scale = scale.max(1);
    let width = history.width() * scale;
    let height = history.rows().len() * scale;
    let mut px = Vec::with_capacity(width * height);
    for row in history.rows() {
        let line: Vec<bool> = (0..width).map(|x| row.get(x / scale)).collect();
        for _ in 0..scale {
            px.extend_from_slice(&line);
        }
    }
    (width, height, px)
}

/// Binary PBM (`P4`): rows packed most significant bit first, padded to whole bytes.
pub fn to_pbm(history: &SpacetimeHistory, scale: usize) -> Vec<u8> {
    let (width, height, px) = pixels(history, scale);
    let mut out = format!("P4\n{width} {height}\n").into_bytes();
    for row in px.chunks(width) {
        for byte in row.chunks(8) {
            let b = byte.iter().enumerate().fold(0u8, |acc, (i, &on)| acc | (on as u8) << (7 - i));
            out.push(b);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{evolve, Configuration, RuleTable};

    #[test]
    fn header_and_padding() {
        let h = evolve(&Configuration::single_one_centered(11), &RuleTable::decode(250, 1).unwrap(), 0).unwrap();
        let pbm = to_pbm(&h, 1);
        assert_eq!(&pbm[..8], b"P4\n11 1\n");
        // 00000100000 -> 0000_0100 000x_xxxx
        assert_eq!(&pbm[8..], &[0b0000_0100, 0b0000_0000]);
    }

    #[test]
    fn scaled() {
        let h = evolve(&"100".parse().unwrap(), &RuleTable::identity(1).unwrap(), 1).unwrap();
        let (w, ht, px) = pixels(&h, 2);
        assert_eq!((w, ht), (6, 4));
        assert_eq!(&px[..6], &[true, true, false, false, false, false]);
        let pbm = to_pbm(&h, 2);
        assert_eq!(&pbm[..7], b"P4\n6 4\n");
        assert_eq!(pbm[7..], [0b1100_0000; 4]);
    }
}
