//! Binary checkpoint container.
//!
//! Layout, all little-endian:
//!
//! ```text
//! b"ICFL" | u32 version | u32 N | 2N x f64 points (x0, y0, x1, y1, ...) | f64 t | f64 dt | f64 D | u32 crc32
//! ```
//!
//! The CRC covers every byte before it.

use super::stepper::FlowState;
use crate::error::{Error, Result};
use crate::geometry::CurveState;

pub const MAGIC: &[u8; 4] = b"ICFL";
pub const VERSION: u32 = 1;

const HEADER_LEN: usize = 12;

pub fn checkpoint_save(state: &FlowState) -> Vec<u8> {
    let points = state.curve().points();
    let mut out = Vec::with_capacity(HEADER_LEN + 16 * points.len() + 28);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(points.len() as u32).to_le_bytes());
    for p in points {
        out.extend_from_slice(&p[0].to_le_bytes());
        out.extend_from_slice(&p[1].to_le_bytes());
    }
    for x in [state.time, state.dt, state.dissipation] {
        out.extend_from_slice(&x.to_le_bytes());
    }
    let crc = crc32fast::hash(&out);
    out.extend_from_slice(&crc.to_le_bytes());
    out
}

fn read_u32(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().expect("4-byte slice"))
}

fn read_f64(bytes: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(bytes[at..at + 8].try_into().expect("8-byte slice"))
}

/// Decode a checkpoint and rebuild the state's geometry. The step counter restarts at zero.
pub fn checkpoint_load(bytes: &[u8]) -> Result<FlowState> {
    let corrupt = |msg: String| Error::CorruptCheckpoint(msg);
    if bytes.len() < HEADER_LEN + 28 {
        return Err(corrupt(format!(
            "stream of {} bytes is too short",
            bytes.len()
        )));
    }
    if &bytes[..4] != MAGIC {
        return Err(corrupt("bad magic bytes".into()));
    }
    let version = read_u32(bytes, 4);
    if version != VERSION {
        return Err(corrupt(format!(
            "unsupported version {version}, expected {VERSION}"
        )));
    }
    let n = read_u32(bytes, 8) as usize;
    let expected = HEADER_LEN + 16 * n + 24 + 4;
    if bytes.len() != expected {
        return Err(corrupt(format!(
            "length {} does not match N = {n} (expected {expected})",
            bytes.len()
        )));
    }
    let body = &bytes[..expected - 4];
    let stored = read_u32(bytes, expected - 4);
    let actual = crc32fast::hash(body);
    if stored != actual {
        return Err(corrupt(format!(
            "checksum mismatch: stored {stored:08x}, computed {actual:08x}"
        )));
    }
    let points = (0..n)
        .map(|i| {
            let at = HEADER_LEN + 16 * i;
            [read_f64(bytes, at), read_f64(bytes, at + 8)]
        })
        .collect();
    let tail = HEADER_LEN + 16 * n;
    let (t, dt, d) = (
        read_f64(bytes, tail),
        read_f64(bytes, tail + 8),
        read_f64(bytes, tail + 16),
    );
    let curve =
        CurveState::new(points).map_err(|e| corrupt(format!("invalid curve payload: {e}")))?;
    FlowState::restore(curve, t, dt, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::PresetSpec;

    fn state() -> FlowState {
        let curve = "ellipse:a=1.1,b=1,n=64"
            .parse::<PresetSpec>()
            .unwrap()
            .build()
            .unwrap();
        let mut s = FlowState::new(curve, 3.25e-5).unwrap();
        s.time = 0.125;
        s.dissipation = 1.0 / 3.0;
        s
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let s = state();
        let bytes = checkpoint_save(&s);
        let back = checkpoint_load(&bytes).unwrap();
        assert_eq!(back.curve(), s.curve());
        assert_eq!(back.time.to_bits(), s.time.to_bits());
        assert_eq!(back.dt.to_bits(), s.dt.to_bits());
        assert_eq!(back.dissipation.to_bits(), s.dissipation.to_bits());
        assert_eq!(checkpoint_save(&back), bytes);
    }

    #[test]
    fn truncated_stream_is_corrupt() {
        let bytes = checkpoint_save(&state());
        for cut in [0, 3, 20, bytes.len() - 1] {
            assert!(matches!(
                checkpoint_load(&bytes[..cut]),
                Err(Error::CorruptCheckpoint(_))
            ));
        }
    }

    #[test]
    fn version_bump_is_reported() {
        let mut bytes = checkpoint_save(&state());
        bytes[4..8].copy_from_slice(&2u32.to_le_bytes());
        match checkpoint_load(&bytes) {
            Err(Error::CorruptCheckpoint(msg)) => assert!(msg.contains("version 2"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn flipped_payload_bit_fails_checksum() {
        let mut bytes = checkpoint_save(&state());
        bytes[40] ^= 1;
        match checkpoint_load(&bytes) {
            Err(Error::CorruptCheckpoint(msg)) => assert!(msg.contains("checksum")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
