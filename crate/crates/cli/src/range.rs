use anyhow::{bail, Context};
use std::ops::RangeInclusive;

/// Parses "5..9" (inclusive on both ends) or a single "7".
pub fn parse_range(spec: &str) -> anyhow::Result<RangeInclusive<usize>> {
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: usize = lo.trim().parse().context("range start")?;
        let hi: usize = hi.trim().parse().context("range end")?;
        if lo > hi {
            bail!("empty range {spec}");
        }
        Ok(lo..=hi)
    } else {
        let v: usize = spec.parse().with_context(|| format!("range {spec}"))?;
        Ok(v..=v)
    }
}
