//! Line-oriented text format for instances and labelings.
//!
//! An instance file holds one record per line; `#` starts a comment and
//! blank lines are skipped. Numbers are decimal strings (or `p/q`
//! fractions); scientific notation is rejected.
//!
//! ```text
//! boundary 0 20 0 12
//! mode fixed
//! objective length
//! site 0 4 2.5 1
//! candidate 0 right 2.5
//! group 0 1
//! order 1 0
//! vmin 0.25
//! meta generator hand-written
//! ```
//!
//! `site` lines carry `id x y height`; `candidate` lines `id side y` and are
//! only allowed in `fixed` mode. Site and candidate ids must form dense
//! ranges `0..n` / `0..m`. A labeling file lists one `label` line per site:
//! `label <site> <candidate> <side> <y>`.

use std::collections::BTreeSet;

use crate::model::{
    Boundary, CandId, Candidate, CandidateSource, Constraints, Instance, Objective, Side, Site,
    SiteId,
};
use crate::rational::{format_number, parse_number, Rational};
use crate::verify::Labeling;
use crate::Error;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number(line: usize, token: &str) -> Result<Rational, Error> {
    parse_number(token).map_err(|m| err(line, m))
}

fn side(line: usize, token: &str) -> Result<Side, Error> {
    match token {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        other => Err(err(line, format!("unknown side {other:?}"))),
    }
}

/// Parses an instance document. Validation (general position, dense ids,
/// sites inside the boundary) runs before returning.
pub fn parse_instance(text: &str) -> Result<Instance, Error> {
    let mut boundary: Option<Boundary> = None;
    let mut mode: Option<&str> = None;
    let mut objective = Objective::Length;
    let mut v_min = None;
    let mut sites: Vec<(usize, Site)> = Vec::new();
    let mut candidates: Vec<(usize, Candidate)> = Vec::new();
    let mut groups: Vec<BTreeSet<SiteId>> = Vec::new();
    let mut order: Vec<(SiteId, SiteId)> = Vec::new();
    let mut metadata: Vec<(String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "boundary" => {
                if tokens.len() != 5 {
                    return Err(err(lineno, "boundary needs x_left x_right y_bottom y_top"));
                }
                boundary = Some(Boundary {
                    x_left: number(lineno, tokens[1])?,
                    x_right: number(lineno, tokens[2])?,
                    y_bottom: number(lineno, tokens[3])?,
                    y_top: number(lineno, tokens[4])?,
                });
            }
            "mode" => {
                match tokens.get(1) {
                    Some(&"fixed") => mode = Some("fixed"),
                    Some(&"sliding") => mode = Some("sliding"),
                    _ => return Err(err(lineno, "mode must be fixed or sliding")),
                };
            }
            "objective" => {
                objective = match tokens.get(1) {
                    Some(&"length") => Objective::Length,
                    Some(&"bends") => Objective::Bends,
                    _ => return Err(err(lineno, "objective must be length or bends")),
                };
            }
            "vmin" => {
                let token = tokens
                    .get(1)
                    .ok_or_else(|| err(lineno, "vmin needs a value"))?;
                v_min = Some(number(lineno, token)?);
            }
            "site" => {
                if tokens.len() != 5 {
                    return Err(err(lineno, "site needs id x y height"));
                }
                let id: usize = tokens[1]
                    .parse()
                    .map_err(|_| err(lineno, "bad site id"))?;
                sites.push((
                    lineno,
                    Site {
                        id: SiteId(id),
                        x: number(lineno, tokens[2])?,
                        y: number(lineno, tokens[3])?,
                        label_height: number(lineno, tokens[4])?,
                    },
                ));
            }
            "candidate" => {
                if tokens.len() != 4 {
                    return Err(err(lineno, "candidate needs id side y"));
                }
                let id: usize = tokens[1]
                    .parse()
                    .map_err(|_| err(lineno, "bad candidate id"))?;
                candidates.push((
                    lineno,
                    Candidate {
                        id: CandId(id),
                        side: side(lineno, tokens[2])?,
                        y: number(lineno, tokens[3])?,
                    },
                ));
            }
            "group" => {
                if tokens.len() < 2 {
                    return Err(err(lineno, "group needs at least one site id"));
                }
                let mut set = BTreeSet::new();
                for token in &tokens[1..] {
                    let id: usize = token.parse().map_err(|_| err(lineno, "bad site id"))?;
                    set.insert(SiteId(id));
                }
                groups.push(set);
            }
            "order" => {
                if tokens.len() != 3 {
                    return Err(err(lineno, "order needs exactly two site ids"));
                }
                let a: usize = tokens[1].parse().map_err(|_| err(lineno, "bad site id"))?;
                let b: usize = tokens[2].parse().map_err(|_| err(lineno, "bad site id"))?;
                order.push((SiteId(a), SiteId(b)));
            }
            "meta" => {
                if tokens.len() < 3 {
                    return Err(err(lineno, "meta needs a key and a value"));
                }
                metadata.push((tokens[1].to_string(), tokens[2..].join(" ")));
            }
            other => return Err(err(lineno, format!("unknown record {other:?}"))),
        }
    }

    let boundary = boundary.ok_or_else(|| err(0, "missing boundary record"))?;
    let mode = mode.ok_or_else(|| err(0, "missing mode record"))?;

    // ids must be dense so positions and ids coincide
    let mut site_list = vec![None; sites.len()];
    for (lineno, site) in sites {
        let slot = site_list
            .get_mut(site.id.0)
            .ok_or_else(|| err(lineno, format!("site id {} out of range", site.id)))?;
        if slot.is_some() {
            return Err(err(lineno, format!("duplicate site id {}", site.id)));
        }
        *slot = Some(site);
    }
    let sites: Vec<Site> = site_list.into_iter().map(|s| s.unwrap()).collect();

    let candidates = if mode == "fixed" {
        let mut list = vec![None; candidates.len()];
        for (lineno, cand) in candidates {
            let slot = list
                .get_mut(cand.id.0)
                .ok_or_else(|| err(lineno, format!("candidate id {} out of range", cand.id)))?;
            if slot.is_some() {
                return Err(err(lineno, format!("duplicate candidate id {}", cand.id)));
            }
            *slot = Some(cand);
        }
        CandidateSource::Fixed(list.into_iter().map(|c| c.unwrap()).collect())
    } else {
        if let Some((lineno, _)) = candidates.first() {
            return Err(err(*lineno, "sliding instances carry no candidate records"));
        }
        CandidateSource::Sliding
    };

    let instance = Instance {
        boundary,
        sites,
        candidates,
        constraints: Constraints::new(groups, order),
        objective,
        v_min,
        metadata,
    };
    instance.validate()?;
    Ok(instance)
}

/// Serializes an instance; `parse_instance` round-trips the output exactly.
pub fn format_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let b = &instance.boundary;
    out.push_str(&format!(
        "boundary {} {} {} {}\n",
        format_number(&b.x_left),
        format_number(&b.x_right),
        format_number(&b.y_bottom),
        format_number(&b.y_top)
    ));
    out.push_str(match instance.candidates {
        CandidateSource::Fixed(_) => "mode fixed\n",
        CandidateSource::Sliding => "mode sliding\n",
    });
    out.push_str(&format!("objective {}\n", instance.objective));
    if let Some(v) = &instance.v_min {
        out.push_str(&format!("vmin {}\n", format_number(v)));
    }
    for site in &instance.sites {
        out.push_str(&format!(
            "site {} {} {} {}\n",
            site.id,
            format_number(&site.x),
            format_number(&site.y),
            format_number(&site.label_height)
        ));
    }
    if let CandidateSource::Fixed(cands) = &instance.candidates {
        for cand in cands {
            out.push_str(&format!(
                "candidate {} {} {}\n",
                cand.id,
                cand.side,
                format_number(&cand.y)
            ));
        }
    }
    for group in &instance.constraints.groups {
        out.push_str("group");
        for site in group {
            out.push_str(&format!(" {site}"));
        }
        out.push('\n');
    }
    for (a, b) in &instance.constraints.order {
        out.push_str(&format!("order {a} {b}\n"));
    }
    for (key, value) in &instance.metadata {
        out.push_str(&format!("meta {key} {value}\n"));
    }
    out
}

/// Serializes a labeling against the candidate set it refers to.
pub fn format_labeling(labeling: &Labeling, candidates: &[Candidate]) -> String {
    let mut out = String::new();
    for (site, cand) in &labeling.assignment {
        let c = &candidates[cand.0];
        out.push_str(&format!(
            "label {site} {cand} {} {}\n",
            c.side,
            format_number(&c.y)
        ));
    }
    out
}

/// Parses a labeling file. The side and y recorded on each line must match
/// the instance's candidate when the instance has fixed candidates.
pub fn parse_labeling(text: &str, instance: &Instance) -> Result<Labeling, Error> {
    let mut assignment = std::collections::BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] != "label" || tokens.len() != 5 {
            return Err(err(lineno, "expected: label <site> <candidate> <side> <y>"));
        }
        let site: usize = tokens[1].parse().map_err(|_| err(lineno, "bad site id"))?;
        let cand: usize = tokens[2].parse().map_err(|_| err(lineno, "bad candidate id"))?;
        let file_side = side(lineno, tokens[3])?;
        let file_y = number(lineno, tokens[4])?;
        if site >= instance.sites.len() {
            return Err(err(lineno, format!("unknown site {site}")));
        }
        if let Some(cands) = instance.fixed_candidates() {
            let known = cands
                .get(cand)
                .ok_or_else(|| err(lineno, format!("unknown candidate {cand}")))?;
            if known.side != file_side || known.y != file_y {
                return Err(err(
                    lineno,
                    format!("candidate {cand} does not sit at {file_side} {}", format_number(&file_y)),
                ));
            }
        }
        if assignment.insert(SiteId(site), CandId(cand)).is_some() {
            return Err(err(lineno, format!("site {site} labeled twice")));
        }
    }
    Ok(Labeling::new(assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    const MINIMAL: &str = "\
# a one-site instance
boundary 0 10 0 10
mode fixed
objective bends
site 0 4 2.5 1
candidate 0 right 2.5
";

    #[test]
    fn minimal_round_trip() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(inst.sites.len(), 1);
        assert_eq!(inst.sites[0].y, frac(5, 2));
        assert_eq!(inst.objective, Objective::Bends);
        let text = format_instance(&inst);
        let again = parse_instance(&text).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn duplicate_x_is_rejected_with_the_pair() {
        let text = "\
boundary 0 10 0 10
mode sliding
site 0 4 2 1
site 1 4 3 1
";
        match parse_instance(text) {
            Err(Error::GeneralPosition { axis: 'x', a, b }) => {
                assert_eq!((a.0, b.0), (0, 1));
            }
            other => panic!("expected general-position rejection, got {other:?}"),
        }
    }

    #[test]
    fn decimal_is_exact_and_scientific_is_rejected() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(inst.sites[0].y, frac(5, 2));
        let bad = MINIMAL.replace("2.5 1", "2.5e0 1");
        assert!(matches!(parse_instance(&bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn unknown_records_carry_line_numbers() {
        let text = "boundary 0 10 0 10\nmode fixed\nfrobnicate 1\n";
        match parse_instance(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn sparse_site_ids_are_rejected() {
        let text = "\
boundary 0 10 0 10
mode sliding
site 0 4 2 1
site 2 5 3 1
";
        assert!(parse_instance(text).is_err());
    }

    #[test]
    fn labeling_round_trip_and_mismatch() {
        let inst = parse_instance(MINIMAL).unwrap();
        let labeling = Labeling::new([(SiteId(0), CandId(0))].into_iter().collect());
        let text = format_labeling(&labeling, inst.fixed_candidates().unwrap());
        assert_eq!(text, "label 0 0 right 2.5\n");
        let parsed = parse_labeling(&text, &inst).unwrap();
        assert_eq!(parsed, labeling);
        let tampered = text.replace("2.5", "3.5");
        assert!(parse_labeling(&tampered, &inst).is_err());
    }
}
