//! Weight and point wire formats: `"a,b;c,d"`, one block per simple factor
//! or a single block for the whole rank.

use branchlab::lie::parse_coords;
use branchlab::{Error, Rational, Result, RootSystem, Weight};

fn check_blocks(rs: &RootSystem, lens: &[usize], total: usize) -> Result<()> {
    if total != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), got: total });
    }
    if lens.len() > 1 {
        let expected: Vec<usize> = (0..rs.factors().len()).map(|k| rs.factor_range(k).len()).collect();
        if lens != expected.as_slice() {
            return Err(Error::Parse(format!(
                "weight blocks have lengths {lens:?}, the factors of {} need {expected:?}",
                rs.type_string()
            )));
        }
    }
    Ok(())
}

pub fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight> {
    let blocks: Vec<Vec<i64>> = s.split(';').map(parse_coords).collect::<Result<_>>()?;
    let lens: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let coords: Vec<i64> = blocks.into_iter().flatten().collect();
    check_blocks(rs, &lens, coords.len())?;
    Ok(Weight(coords))
}

/// A rational point `"target;source"`, e.g. `"1/2,1;1,1;1,1"`. Source blocks
/// follow the same rules as [`parse_weight`].
pub fn parse_point(target: &RootSystem, source: &RootSystem, s: &str) -> Result<Vec<Rational>> {
    let (t, rest) = s
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("point `{s}` needs the form `target;source`")))?;
    let parse_block = |b: &str| -> Result<Vec<Rational>> {
        b.split(',')
            .map(|c| {
                c.trim()
                    .parse::<Rational>()
                    .map_err(|_| Error::Parse(format!("bad coordinate `{c}` in point `{s}`")))
            })
            .collect()
    };
    let mu = parse_block(t)?;
    check_blocks(target, &[mu.len()], mu.len())?;
    let blocks: Vec<Vec<Rational>> = rest.split(';').map(parse_block).collect::<Result<_>>()?;
    let lens: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let lambda: Vec<Rational> = blocks.into_iter().flatten().collect();
    check_blocks(source, &lens, lambda.len())?;
    Ok(mu.into_iter().chain(lambda).collect())
}
