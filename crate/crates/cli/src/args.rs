//! Value parsers for parameter lists and ranges.

use hmset::Multiplicity;

/// Parses `7`, `4..6`, `4-6` or `4,5,7` (ranges inclusive) into a sorted,
/// de-duplicated list.
pub fn parse_usize_list(text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(format!("empty item in {text:?}"));
        }
        let bounds = part
            .split_once("..")
            .or_else(|| part.split_once('-'))
            .map(|(a, b)| (a.trim(), b.trim().trim_start_matches('=')));
        match bounds {
            Some((lo, hi)) => {
                let lo: usize = lo.parse().map_err(|_| format!("bad number {lo:?}"))?;
                let hi: usize = hi.parse().map_err(|_| format!("bad number {hi:?}"))?;
                if lo > hi {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| format!("bad number {part:?}"))?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Like [`parse_usize_list`], but items may also be `inf`.
pub fn parse_multiplicity_list(text: &str) -> Result<Vec<Multiplicity>, String> {
    let mut finite = Vec::new();
    let mut unbounded = false;
    for part in text.split(',').map(str::trim) {
        if part.eq_ignore_ascii_case("inf") {
            unbounded = true;
        } else {
            finite.extend(parse_usize_list(part)?);
        }
    }
    finite.sort_unstable();
    finite.dedup();
    if finite.contains(&0) {
        return Err("multiplicity cap must be at least 1".into());
    }
    let mut out: Vec<Multiplicity> = finite.into_iter().map(Multiplicity::Bounded).collect();
    if unbounded {
        out.push(Multiplicity::Unbounded);
    }
    Ok(out)
}

pub fn parse_multiplicity(text: &str) -> Result<Multiplicity, String> {
    text.parse::<Multiplicity>().map_err(|e| e.to_string())
}
