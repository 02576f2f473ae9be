//! Link-level simulator for a two-tier uplink: one macro cell overlaid with
//! a femtocell whose base station reaches the macro decoder only through a
//! capacity-limited backhaul.
//!
//! The crate evaluates four forwarding schemes (decode-and-forward,
//! quantize-and-forward with an elementary or a Wyner-Ziv quantizer, and
//! decode-and-forward aided by quantized side information on the reverse
//! pipe), folds the two decoding orders of each scheme into a time-shared
//! rate region, and reports max sum-rate and max-min operating points,
//! either for one explicit SNR triplet or as seeded Monte Carlo sweeps over
//! backhaul capacity or femto station position.

pub mod channel;
pub mod cli;
pub mod montecarlo;
pub mod region;
pub mod schemes;

/// Parameter rejected by a constructor, sampler, or evaluator.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("{name} out of range: {value}")]
pub struct ParamError {
    pub name: &'static str,
    pub value: f64,
}

pub(crate) fn check(name: &'static str, value: f64, ok: bool) -> Result<(), ParamError> {
    if ok {
        Ok(())
    } else {
        Err(ParamError { name, value })
    }
}
