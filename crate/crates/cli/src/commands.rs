use std::fmt::Write as _;

use anyhow::{anyhow, Context};
use serde_json::{json, Value};
use uvinfo::apps::{
    confusion_ingest, hamming_distance_bound, hamming_equivocation, matrix_capacity, parse_codebook, BitString,
    EquivocationMatrix,
};
use uvinfo::chancap::{BoundChannel, Channel};
use uvinfo::infocalc::{classify_levels, Analysis, Direction, Level, MiResult};
use uvinfo::memoryless::{
    capacity_profile, rate_at_horizon, single_letter_check, tensorization_check, ConfidenceSequence, SequenceRule,
    SingleLetterCertificate, SingleLetterParams, TensorStatus, Theorem,
};
use uvinfo::uvcore::{Side, UncertainPair, UncertaintyFunction};
use uvinfo::Ratio;

use crate::inputs;
use crate::{CapacityArgs, ClassifyArgs, Failure, HammingArgs, PairArgs, RatesArgs, SingleLetterArgs, VerifyArgs};

pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

type Outcome = Result<Report, Failure>;

fn report(json: Value, text: String) -> Outcome {
    Ok(Report { json, text, ok: true })
}

fn set_text<'a>(values: impl IntoIterator<Item = &'a Ratio>) -> String {
    let parts: Vec<String> = values.into_iter().map(Ratio::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn analysis_of(a: &PairArgs) -> Result<(UncertainPair, UncertaintyFunction, UncertaintyFunction, Analysis), Failure> {
    let pair = inputs::pair(&a.pair)?;
    let mx = inputs::uncertainty(a.mx.as_deref(), || inputs::default_measure(pair.x_ground()))?;
    let my = inputs::uncertainty(a.my.as_deref(), || inputs::default_measure(pair.y_ground()))?;
    let analysis = Analysis::new(&pair, &mx, &my)?;
    Ok((pair, mx, my, analysis))
}

pub fn analyze(a: &PairArgs) -> Outcome {
    let (_, mx, my, analysis) = analysis_of(a)?;
    let sets = analysis.association_sets();
    let mut text = format!(
        "m_x {mx}, m_y {my}\nassociation set of x sections: {}\nassociation set of y sections: {}\n",
        set_text(&sets.a_xy),
        set_text(&sets.a_yx)
    );
    let levels = match (&a.delta1, &a.delta2) {
        (Some(d1), Some(d2)) => {
            let status = classify_levels(&sets, d1, d2);
            writeln!(text, "at ({d1}, {d2}): {:?}", status.level).unwrap();
            Some(status)
        }
        (None, None) => None,
        _ => return Err(Failure::Input(anyhow!("give both --delta1 and --delta2, or neither"))),
    };
    let ranges = |side| analysis.distinct_sections(side).len();
    writeln!(
        text,
        "distinct ranges: {} on x, {} on y",
        ranges(Side::X),
        ranges(Side::Y)
    )
    .unwrap();
    report(
        json!({
            "m_x": mx.to_string(),
            "m_y": my.to_string(),
            "association_sets": sets,
            "distinct_ranges": {"x": ranges(Side::X), "y": ranges(Side::Y)},
            "levels": levels,
        }),
        text,
    )
}

fn mi_line(label: &str, delta: &Ratio, mi: &MiResult) -> String {
    format!("{label} at {delta}: {} bits ({:?})\n", mi.bits, mi.status)
}

pub fn mi(a: &PairArgs) -> Outcome {
    if a.delta1.is_none() && a.delta2.is_none() {
        return Err(Failure::Input(anyhow!(
            "give --delta1 (x side), --delta2 (y side) or both"
        )));
    }
    let (_, _, _, analysis) = analysis_of(a)?;
    let mut text = String::new();
    let mut out = serde_json::Map::new();
    if let Some(d1) = &a.delta1 {
        let mi = analysis.mutual_information(Direction::XGivenY.side(), d1);
        text += &mi_line("information about x", d1, &mi);
        out.insert("x_given_y".into(), json!({"delta": d1, "result": mi}));
    }
    if let Some(d2) = &a.delta2 {
        let mi = analysis.mutual_information(Direction::YGivenX.side(), d2);
        text += &mi_line("information about y", d2, &mi);
        out.insert("y_given_x".into(), json!({"delta": d2, "result": mi}));
    }
    if let (Some(d1), Some(d2)) = (&a.delta1, &a.delta2) {
        let status = classify_levels(&analysis.association_sets(), d1, d2);
        let taxicab = analysis.taxicab_family(d1, d2);
        writeln!(
            text,
            "pair at ({d1}, {d2}): {:?}; taxicab family exists: {}",
            status.level, taxicab.exists
        )
        .unwrap();
        out.insert("levels".into(), json!(status));
        out.insert("taxicab".into(), json!(taxicab));
    }
    report(Value::Object(out), text)
}

fn bound_channel(path: &str, m: Option<&str>) -> Result<(Channel, UncertaintyFunction, BoundChannel), Failure> {
    let ch = inputs::channel(path)?;
    let m = inputs::channel_measure(&ch, m)?;
    let bound = BoundChannel::new(&ch, &m)?;
    Ok((ch, m, bound))
}

pub fn capacity(a: &CapacityArgs) -> Outcome {
    let (_, m, bound) = bound_channel(&a.channel.channel, a.channel.m.as_deref())?;
    let cap = if a.beyond_range {
        bound.capacity_unchecked(&a.delta)?
    } else {
        bound.capacity(&a.delta)?
    };
    let mut text = format!(
        "m {m}, m(V) {}\ncapacity at {}: count {}, {} bits, witness {}\n",
        bound.v_min(),
        a.delta,
        cap.count,
        cap.bits,
        cap.witness
    );
    let mut out = json!({"uncertainty": m.to_string(), "v_min": bound.v_min(), "capacity": cap});
    if a.average {
        let avg = bound.avg_overlap_capacity(&a.delta)?;
        writeln!(
            text,
            "average-overlap capacity: count {}, witness {}",
            avg.count, avg.witness
        )
        .unwrap();
        out["average"] = json!(avg);
        if a.delta < *bound.v_min() {
            let b = bound.average_bounds(&a.delta)?;
            writeln!(
                text,
                "comparison bounds: first {}, second {:?}",
                b.first_holds, b.second_holds
            )
            .unwrap();
            out["average_bounds"] = json!(b);
        }
    }
    report(out, text)
}

pub fn rates(a: &RatesArgs) -> Outcome {
    let (ch, m, _) = bound_channel(&a.channel.channel, a.channel.m.as_deref())?;
    let seq = inputs::sequence(&a.sequence)?.ok_or_else(|| anyhow!("--sequence is required"))?;
    let profile = capacity_profile(&ch, &m, &seq, a.horizon)?;
    let mut text = String::new();
    for r in &profile.rates {
        writeln!(
            text,
            "horizon {} at {}: count {}, {} bits per use",
            r.horizon, r.delta, r.count, r.bits_per_symbol
        )
        .unwrap();
    }
    writeln!(
        text,
        "{}: min {} max {} bits per use",
        profile.horizon_label,
        profile.horizon_min.per_symbol(),
        profile.horizon_max.per_symbol()
    )
    .unwrap();
    for c in &profile.certified {
        let cert = &c.certificate;
        writeln!(
            text,
            "certified {:?}: {} bits (codebook {}, level {})",
            c.quantity, c.bits, cert.codebook, cert.level
        )
        .unwrap();
    }
    for (t, why) in &profile.uncertified {
        writeln!(text, "no certificate from {t:?}: {why}").unwrap();
    }
    report(json!(profile), text)
}

fn certificate_text(cert: &SingleLetterCertificate) -> String {
    let mut text = format!(
        "{:?} for {:?}, codebook {}, level {}\n",
        cert.theorem, cert.quantity, cert.codebook, cert.level
    );
    for c in &cert.conditions {
        writeln!(
            text,
            "  [{}] {}: {}",
            if c.holds { "ok" } else { "FAIL" },
            c.name,
            c.detail
        )
        .unwrap();
    }
    match &cert.capacity_bits {
        Some(b) => writeln!(text, "certified: {b} bits").unwrap(),
        None => writeln!(text, "not certified").unwrap(),
    }
    text
}

pub fn single_letter(a: &SingleLetterArgs) -> Outcome {
    let (ch, m, _) = bound_channel(&a.channel.channel, a.channel.m.as_deref())?;
    let theorem: Theorem = a.theorem.parse()?;
    let params = SingleLetterParams {
        codebook: ch.codebook(inputs::symbols(&a.codebook))?,
        delta_bar: a.delta_bar.clone(),
        delta1: a.delta1.clone(),
        sequence: inputs::sequence(&a.sequence)?,
    };
    let cert = single_letter_check(&ch, &m, theorem, &params)?;
    Ok(Report {
        text: certificate_text(&cert),
        ok: cert.holds(),
        json: json!(cert),
    })
}

/// Zero, every distinct value times each codebook size, and midpoints
/// between consecutive points, all below the limit.
fn level_grid(values: &[Ratio], sizes: usize, limit: &Ratio) -> Vec<Ratio> {
    let mut grid = vec![Ratio::zero()];
    for v in values {
        for k in 1..=sizes as u64 {
            grid.push(v * &Ratio::from_u64(k));
        }
    }
    grid.retain(|d| d < limit);
    grid.sort();
    grid.dedup();
    let mut mids: Vec<Ratio> = grid.windows(2).map(|w| (&w[0] + &w[1]) / Ratio::from_u64(2)).collect();
    if let Some(last) = grid.last() {
        mids.push((last + limit) / Ratio::from_u64(2));
    }
    grid.extend(mids);
    grid.sort();
    grid
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    if a.channel.is_none() && a.pair.is_none() {
        return Err(Failure::Input(anyhow!("give --channel, --pair or both")));
    }
    let mut out = serde_json::Map::new();
    let mut text = String::new();
    let mut ok = true;
    if let Some(path) = &a.channel {
        let (ch, m, bound) = bound_channel(path, a.m.as_deref())?;
        let grid = level_grid(&bound.table().distinct_values(), ch.inputs().len(), bound.v_min());
        let coding = bound.verify_coding_theorem(&grid)?;
        writeln!(
            text,
            "coding theorem: {} levels, {} mismatches",
            coding.rows.len(),
            coding.mismatches
        )
        .unwrap();
        ok &= coding.mismatches == 0;

        let pair = ch.induced_pair(&ch.codebook(ch.inputs().iter().cloned())?)?;
        let mut tensor = Vec::new();
        for delta in [Ratio::zero()]
            .into_iter()
            .chain(grid.iter().filter(|d| !d.is_zero()).take(3).cloned())
        {
            let r = tensorization_check(&[pair.clone(), pair.clone()], &m, &delta)?;
            writeln!(text, "tensorization at {delta}: {:?}", r.status).unwrap();
            ok &= r.status != TensorStatus::Violated;
            tensor.push(r);
        }
        out.insert("coding_theorem".into(), json!(coding));
        out.insert("tensorization".into(), json!(tensor));
    }
    if let Some(path) = &a.pair {
        let pair_args = PairArgs {
            pair: path.clone(),
            mx: a.mx.clone(),
            my: a.my.clone(),
            delta1: None,
            delta2: None,
        };
        let (_, _, _, analysis) = analysis_of(&pair_args)?;
        let sets = analysis.association_sets();
        let symmetry = match (sets.a_xy.first(), sets.a_yx.first()) {
            (Some(x0), Some(y0)) => {
                let (d1, d2) = (x0 / &Ratio::from_u64(2), y0 / &Ratio::from_u64(2));
                let taxicab = analysis.taxicab_family(&d1, &d2);
                let xy = analysis.mutual_information(Side::X, &d1);
                let yx = analysis.mutual_information(Side::Y, &d2);
                let status = if !taxicab.exists {
                    "skipped"
                } else if xy.bits == yx.bits {
                    "holds"
                } else {
                    "violated"
                };
                writeln!(
                    text,
                    "symmetry at ({d1}, {d2}): {status} ({} vs {} bits)",
                    xy.bits, yx.bits
                )
                .unwrap();
                ok &= status != "violated";
                json!({"delta1": d1, "delta2": d2, "status": status, "x_given_y": xy.bits, "y_given_x": yx.bits})
            }
            _ => {
                writeln!(text, "symmetry: skipped, an association set is empty").unwrap();
                json!({"status": "skipped"})
            }
        };
        out.insert("symmetry".into(), symmetry);
    }
    Ok(Report {
        json: Value::Object(out),
        text,
        ok,
    })
}

pub fn hamming(a: &HammingArgs) -> Outcome {
    if let Some(pair) = &a.pair {
        let x1: BitString = pair[0].parse()?;
        let x2: BitString = pair[1].parse()?;
        let e = hamming_equivocation(&x1, &x2, &a.tau)?;
        return report(
            json!({"x1": x1, "x2": x2, "tau": a.tau, "equivocation": e}),
            format!("equivocation of {x1} and {x2}: {e}\n"),
        );
    }
    let path = a
        .codebook
        .as_deref()
        .ok_or_else(|| anyhow!("give --codebook or --pair"))?;
    let words = parse_codebook(&inputs::text_file(path)?)?;
    let rep = hamming_distance_bound(&words, &a.tau, &a.delta)?;
    let mut text = format!(
        "{} codewords of length {}, radius {}, level {}\n",
        rep.codebook_size, rep.length, rep.radius, rep.delta
    );
    match (rep.min_distance, rep.pairs.first()) {
        (Some(d), Some(p)) => {
            writeln!(text, "guaranteed distance {}, least actual distance {d}", p.bound).unwrap();
            writeln!(text, "correctable flips: {}", rep.correctable.unwrap_or(0)).unwrap();
        }
        _ => writeln!(text, "a single codeword: nothing to check").unwrap(),
    }
    writeln!(text, "bound holds for every pair: {}", rep.all_hold).unwrap();
    Ok(Report {
        ok: rep.all_hold,
        text,
        json: json!(rep),
    })
}

pub fn classify(a: &ClassifyArgs) -> Outcome {
    let (json, cap) = if let Some(path) = &a.confusion {
        let file = std::fs::File::open(path).with_context(|| format!("reading {path}"))?;
        let ch = confusion_ingest(file)?;
        let m = UncertaintyFunction::cardinality(ch.outputs().len() as u64, 1);
        let cap = BoundChannel::new(&ch, &m)?.capacity(&a.delta)?;
        (json!({"channel": ch, "capacity": cap}), cap)
    } else {
        let path = a.matrix.as_deref().expect("clap requires one input");
        let em: EquivocationMatrix =
            serde_json::from_str(&inputs::text_file(path)?).map_err(|e| anyhow!("matrix in {path}: {e}"))?;
        let cap = matrix_capacity(&em, &a.delta)?;
        (json!({"matrix": em, "capacity": cap}), cap)
    };
    let text = format!(
        "capacity at {}: count {}, {} bits, labels {}\n",
        a.delta, cap.count, cap.bits, cap.witness
    );
    report(json, text)
}

const BLOCK_CHANNEL: &str = include_str!("../fixtures/block_channel.json");
const WALKERS: &str = include_str!("../fixtures/walkers.json");

struct Case {
    name: &'static str,
    expected: String,
    got: String,
}

fn r(p: i64, q: i64) -> Ratio {
    Ratio::new(p, q)
}

fn certified(ch: &Channel, m: &UncertaintyFunction, t: Theorem, params: &SingleLetterParams) -> anyhow::Result<String> {
    let cert = single_letter_check(ch, m, t, params)?;
    Ok(cert
        .capacity_bits
        .map_or("not certified".into(), |b| format!("{b} bits")))
}

fn golden_cases() -> anyhow::Result<Vec<Case>> {
    let pair = inputs::parse_pair_spec(WALKERS)?;
    let analysis = Analysis::new(&pair, &"card:5:1".parse()?, &"leb+10".parse()?)?;
    let sets = analysis.association_sets();
    let regimes: Vec<Level> = [(r(1, 6), r(1, 4)), (r(3, 5), r(1, 2)), (r(1, 4), r(2, 5))]
        .iter()
        .map(|(d1, d2)| classify_levels(&sets, d1, d2).level)
        .collect();
    let walkers = format!("{} {} {regimes:?}", set_text(&sets.a_xy), set_text(&sets.a_yx));

    let ch = inputs::parse_channel_spec(BLOCK_CHANNEL)?;
    let (card1, card3) = (
        UncertaintyFunction::cardinality(19, 1),
        UncertaintyFunction::cardinality(19, 3),
    );
    let blocks = ch.codebook(["1", "7", "13"])?;
    let params =
        |delta_bar: Option<Ratio>, delta1: Option<Ratio>, sequence: Option<ConfidenceSequence>| SingleLetterParams {
            codebook: blocks.clone(),
            delta_bar,
            delta1,
            sequence,
        };
    let upper = certified(
        &ch,
        &card1,
        Theorem::T12,
        &params(
            Some(r(1, 6)),
            Some(r(2, 9)),
            Some(ConfidenceSequence::geometric(r(7, 342))?),
        ),
    )?;
    let one_step = rate_at_horizon(&ch, &card1, &r(2, 9), 1)?.bits_per_symbol;
    let zero_error = certified(&ch, &card1, Theorem::Cor2, &params(None, None, None))?;
    let capacity0 = BoundChannel::new(&ch, &card1)?.capacity(&Ratio::zero())?.count;
    let base = r(1029, 6859);
    let lower_seq = ConfidenceSequence::starting_at(
        r(1, 27),
        SequenceRule::Geometric {
            scale: r(1, 27) / &base,
            base,
        },
    )?;
    let lower = certified(
        &ch,
        &card3,
        Theorem::T13,
        &params(Some(r(1, 27)), Some(r(1, 27)), Some(lower_seq)),
    )?;
    let vanishing = certified(&ch, &card3, Theorem::T14, &params(Some(r(1, 27)), None, None))?;

    Ok(vec![
        Case {
            name: "walkers association sets and regimes",
            expected: "{1/5, 3/5} {3/8, 1/2} [Disassociated, Associated, Neither]".into(),
            got: walkers,
        },
        Case {
            name: "upper capacity along (7/342)^n",
            expected: "1 bits; one step 1".into(),
            got: format!("{upper}; one step {one_step}"),
        },
        Case {
            name: "zero-error capacity",
            expected: "1 bits; count 2".into(),
            got: format!("{zero_error}; count {capacity0}"),
        },
        Case {
            name: "lower capacity with cubed cardinality",
            expected: "1.584963 bits".into(),
            got: lower,
        },
        Case {
            name: "vanishing lower capacity",
            expected: "1.584963 bits".into(),
            got: vanishing,
        },
    ])
}

pub fn examples() -> Outcome {
    let cases = golden_cases().map_err(Failure::Input)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in &cases {
        let pass = c.expected == c.got;
        writeln!(text, "{} {}: {}", if pass { "PASS" } else { "FAIL" }, c.name, c.got).unwrap();
        if !pass {
            writeln!(text, "     expected {}", c.expected).unwrap();
        }
        rows.push(json!({"name": c.name, "expected": c.expected, "got": c.got, "pass": pass}));
    }
    let ok = cases.iter().all(|c| c.expected == c.got);
    Ok(Report {
        json: json!({"cases": rows, "all_pass": ok}),
        text,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_straddles_each_value() {
        let grid = level_grid(&[r(1, 10)], 2, &r(1, 2));
        assert_eq!(grid, vec![r(0, 1), r(1, 20), r(1, 10), r(3, 20), r(1, 5), r(7, 20)]);
    }

    #[test]
    fn bundled_examples_pass() {
        for c in golden_cases().unwrap() {
            assert_eq!(c.expected, c.got, "{}", c.name);
        }
    }
}
