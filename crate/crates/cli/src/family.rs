use anyhow::{anyhow, bail, Context, Result};
use dimlab::order::{self, Poset};

fn numbers(args: &[&str]) -> Result<Vec<usize>> {
    args.iter().map(|a| a.trim().parse::<usize>().with_context(|| format!("expected a number, got {a:?}"))).collect()
}

fn exactly<const N: usize>(name: &str, args: &[&str]) -> Result<[usize; N]> {
    let v = numbers(args)?;
    v.try_into().map_err(|_| anyhow!("{name} takes {N} numeric parameter(s)"))
}

/// Builds one of the named families from its numeric parameters.
pub fn build(name: &str, args: &[&str]) -> Result<Poset> {
    let p = match name {
        "chain" => order::chain(exactly::<1>(name, args)?[0]),
        "antichain" => order::antichain(exactly::<1>(name, args)?[0]),
        "cube" | "boolean" => order::boolean_lattice(exactly::<1>(name, args)?[0]),
        "standard" => order::standard_example(exactly::<1>(name, args)?[0]),
        "slice" => {
            let [d, a, b] = exactly::<3>(name, args)?;
            order::graded_slice(d, a, b)
        }
        "band" => order::middle_band_pruned(exactly::<1>(name, args)?[0]),
        other => bail!("unknown family {other:?} (chain, antichain, cube, standard, slice, band)"),
    };
    Ok(p?)
}

/// Parses `name:arg,arg` such as `standard:3` or `slice:4,1,2`.
pub fn from_token(token: &str) -> Result<Poset> {
    let (name, rest) = token.split_once(':').unwrap_or((token, ""));
    let args: Vec<&str> = if rest.is_empty() { vec![] } else { rest.split(',').collect() };
    build(name, &args).with_context(|| format!("in factor {token:?}"))
}

/// `family params...`, or `product tok...` / `lexsum index tok...`.
pub fn generate(family: &str, params: &[String]) -> Result<Poset> {
    let params: Vec<&str> = params.iter().map(String::as_str).collect();
    match family {
        "product" => {
            if params.is_empty() {
                bail!("product needs at least one factor such as standard:3");
            }
            let factors = params.iter().map(|t| from_token(t)).collect::<Result<Vec<_>>>()?;
            Ok(order::product_many(&factors)?)
        }
        "lexsum" => {
            let (index, parts) = params.split_first().ok_or_else(|| anyhow!("lexsum needs an index poset"))?;
            let index = from_token(index)?;
            let parts = parts.iter().map(|t| from_token(t)).collect::<Result<Vec<_>>>()?;
            Ok(order::lex_sum(&index, &parts)?)
        }
        _ => build(family, &params),
    }
}
