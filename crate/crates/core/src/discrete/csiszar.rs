use super::joint::{JointPmf, Var};
use crate::error::{Error, Result};
use crate::model::LogBase;

const MAX_LEN: usize = 3;

fn sequence_len(j: &JointPmf) -> Result<usize> {
    let vars = j.vars();
    if vars.is_empty() || !vars.len().is_multiple_of(2) {
        return Err(Error::BadSequenceShape(format!("{} variables", vars.len())));
    }
    let n = vars.len() / 2;
    if n > MAX_LEN {
        return Err(Error::BadSequenceShape(format!("length {n} exceeds {MAX_LEN}")));
    }
    for i in 1..=n {
        for v in [Var::Y1At(i), Var::Y2At(i)] {
            if !vars.contains(&v) {
                return Err(Error::BadSequenceShape(format!("missing {v}")));
            }
        }
    }
    Ok(n)
}

/// `|sum_i I(Y1_i; Y2_{i+1..N} | Y1_{1..i-1}) - sum_i I(Y2_i; Y1_{1..i-1} | Y2_{i+1..N})|`
/// for a joint over two length-`N` output sequences.
pub fn csiszar_identity_residual(j: &JointPmf) -> Result<f64> {
    let n = sequence_len(j)?;
    let b = LogBase::Bits;
    let past = |i: usize| -> Vec<Var> { (1..i).map(Var::Y1At).collect() };
    let future = |i: usize| -> Vec<Var> { (i + 1..=n).map(Var::Y2At).collect() };
    let mut left = 0.0;
    let mut right = 0.0;
    for i in 1..=n {
        left += j.mutual_information(&[Var::Y1At(i)], &future(i), &past(i), b)?;
        right += j.mutual_information(&[Var::Y2At(i)], &past(i), &future(i), b)?;
    }
    Ok((left - right).abs())
}
