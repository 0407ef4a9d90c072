//! Normalized compression with a pinned raw-DEFLATE encoder.

use std::cell::RefCell;

use miniz_oxide::deflate::core::{
    compress, create_comp_flags_from_zip_params, CompressorOxide, TDEFLFlush, TDEFLStatus,
};

use crate::error::{Error, Result};

/// Compression level handed to the encoder (the standard DEFLATE maximum).
pub const LEVEL: u8 = 9;

/// Encoder identity recorded alongside every chaos-task result.
pub const COMPRESSOR_ID: &str = "miniz_oxide 0.8.9 raw-deflate level 9";

struct Deflater {
    compressor: Box<CompressorOxide>,
    out: Vec<u8>,
}

thread_local! {
    static DEFLATER: RefCell<Deflater> = RefCell::new(Deflater {
        compressor: Box::new(CompressorOxide::new(create_comp_flags_from_zip_params(
            LEVEL.into(),
            0,
            0,
        ))),
        out: vec![0; 1 << 12],
    });
}

/// Length in bytes of the raw DEFLATE stream for `data`.
pub fn deflated_len(data: &[u8]) -> usize {
    DEFLATER.with(|cell| {
        let Deflater { compressor, out } = &mut *cell.borrow_mut();
        compressor.reset();
        let mut input = data;
        let mut written = 0;
        loop {
            let (status, consumed, produced) =
                compress(compressor, input, &mut out[written..], TDEFLFlush::Finish);
            written += produced;
            match status {
                TDEFLStatus::Done => return written,
                TDEFLStatus::Okay => {
                    input = &input[consumed..];
                    if out.len() - written < 64 {
                        let grown = out.len() * 2;
                        out.resize(grown, 0);
                    }
                }
                other => panic!("deflate encoder failed: {other:?}"),
            }
        }
    })
}

/// Compressed length over original length.
pub fn nc(data: &[u8]) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::invalid("cannot compress empty input"));
    }
    Ok(deflated_len(data) as f64 / data.len() as f64)
}
