//! Text grammar for braid and PD input (see `docs/input-formats.md`):
//!
//! ```text
//! braid n=<strands> w=[i,-j,...] colors=[a1,...,an] close=trace
//! pd X[a,b,c,d] X[...] ... signs=[s1,...] colors=[a1,...]
//! ```
//!
//! `colors` defaults to all ones and `close` is optional.

use super::{close, from_pd, parse_braid, TangleDiagram, TangleError};

fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, TangleError> {
    let inner = v
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| TangleError::Parse(format!("{key} must be a bracketed list, got `{v}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| TangleError::Parse(format!("bad entry `{}` in {key}", x.trim())))
        })
        .collect()
}

fn key_value(tok: &str) -> Result<(&str, &str), TangleError> {
    tok.split_once('=').ok_or_else(|| TangleError::Parse(format!("expected key=value, got `{tok}`")))
}

/// Parse a braid or PD description. Braids are closed when `close=trace` is
/// given; PD codes always describe closed diagrams.
pub fn parse_text(input: &str) -> Result<TangleDiagram, TangleError> {
    let mut depth = 0i32;
    let compact: String = input
        .chars()
        .filter(|c| {
            match c {
                '[' => depth += 1,
                ']' => depth -= 1,
                _ => {}
            }
            !(depth > 0 && c.is_whitespace())
        })
        .collect();
    let mut tokens = compact.split_whitespace();
    match tokens.next() {
        Some("braid") => braid(tokens),
        Some("pd") => pd(tokens),
        other => Err(TangleError::Parse(format!("expected `braid` or `pd`, got {other:?}"))),
    }
}

fn braid<'a>(tokens: impl Iterator<Item = &'a str>) -> Result<TangleDiagram, TangleError> {
    let (mut n, mut word, mut colors, mut closed) = (None, None, None, false);
    for tok in tokens {
        let (k, v) = key_value(tok)?;
        match k {
            "n" => n = Some(v.parse::<usize>().map_err(|_| TangleError::Parse(format!("bad strand count `{v}`")))?),
            "w" => word = Some(parse_list::<i64>("w", v)?),
            "colors" => colors = Some(parse_list::<u32>("colors", v)?),
            "close" if v == "trace" => closed = true,
            "close" => return Err(TangleError::Parse(format!("unknown closure `{v}`"))),
            _ => return Err(TangleError::Parse(format!("unknown key `{k}`"))),
        }
    }
    let n = n.ok_or_else(|| TangleError::Parse("missing n=<strands>".into()))?;
    let word = word.ok_or_else(|| TangleError::Parse("missing w=[...]".into()))?;
    let colors = colors.unwrap_or_else(|| vec![1; n]);
    if colors.len() != n {
        return Err(TangleError::Parse(format!("{} colors given for {n} strands", colors.len())));
    }
    let b = parse_braid(&word, &colors)?;
    if closed {
        close(&b)
    } else {
        Ok(b)
    }
}

fn pd<'a>(tokens: impl Iterator<Item = &'a str>) -> Result<TangleDiagram, TangleError> {
    let (mut crossings, mut signs, mut colors) = (Vec::new(), None, Vec::new());
    for tok in tokens {
        if let Some(list) = tok.strip_prefix('X') {
            let q = parse_list::<i64>("X", list)?;
            let q: [i64; 4] =
                q.try_into().map_err(|_| TangleError::Parse(format!("crossing `{tok}` needs four edges")))?;
            crossings.push(q);
            continue;
        }
        match key_value(tok)? {
            ("signs", v) => signs = Some(parse_list::<i32>("signs", v)?),
            ("colors", v) => colors = parse_list::<u32>("colors", v)?,
            (k, _) => return Err(TangleError::Parse(format!("unknown key `{k}`"))),
        }
    }
    let signs = signs.ok_or_else(|| TangleError::Parse("pd input needs signs=[...]".into()))?;
    from_pd(&crossings, &signs, &colors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_trefoil() {
        let t = parse_text("braid n=2 w=[1,1,1] colors=[1,1] close=trace").unwrap();
        assert!(t.is_closed());
        assert_eq!(t.components()[0].writhe, 3);
        let open = parse_text("braid n=3 w=[1, -2]").unwrap();
        assert_eq!(open.crossing_count(), 2);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_text("knot n=2").is_err());
        assert!(parse_text("braid n=2 w=[1,x]").is_err());
        assert!(parse_text("braid n=2 w=[1] colors=[1]").is_err());
        assert!(parse_text("braid w=[1]").is_err());
        assert!(parse_text("pd X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").is_err());
        assert!(parse_text("pd X[1,4,2] signs=[1]").is_err());
    }

    #[test]
    fn parses_pd() {
        let t = parse_text("pd X[1, 4, 2, 5] X[3,6,4,1] X[5,2,6,3] signs=[-1,-1,-1] colors=[2]").unwrap();
        assert!(t.is_closed());
        assert_eq!(t.components()[0].writhe, -3);
        assert_eq!(t.components()[0].color, 2);
    }
}
