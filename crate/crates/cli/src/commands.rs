use std::collections::HashMap;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use econlex::annotate::{aggregate, disambiguate, flag_disagreement, parse_annotations, parse_review_flags};
use econlex::corpus::{all_token_totals, extract_records};
use econlex::depparse::{
    extract_noun_phrases, harvest_candidates, parse_conllu, parse_votes, shortlist, CountKey, RelationConfig,
};
use econlex::econ::{
    auc_compare, auc_compare_bootstrap, build_design, delta_ep_decomposition, logit_mle, ols_newey_west,
    render_fit_table, AucComparison, DesignMatrix, DesignSpec, FitResult, LogitOptions,
};
use econlex::lexicon::{compare, to_categorical, Granularity, LexiconFormat};
use econlex::sentiment::{ep_series, score_with, smooth, standardize, Denominator, LexiconMatcher};
use econlex::{Frequency, Lexicon, ScoreMode};

use crate::inputs::{load_corpus, load_lexicon, load_series, register_corpus, register_lexicon, LoadedCorpus};
use crate::output::{sibling, Outputs};
use crate::*;

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

fn json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

impl From<Mode> for ScoreMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Categorical => ScoreMode::Categorical,
            Mode::Fine => ScoreMode::Fine,
        }
    }
}

impl From<Freq> for Frequency {
    fn from(f: Freq) -> Self {
        match f {
            Freq::Monthly => Frequency::Monthly,
            Freq::Daily => Frequency::Daily,
        }
    }
}

pub fn dispatch(cli: &Cli, argv: &[String]) -> Result<(), CliError> {
    let mut out = Outputs::new(cli.force);
    match &cli.command {
        Command::BuildLexicon(a) => build_lexicon(a, &mut out)?,
        Command::Candidates(a) => candidates(a, &mut out)?,
        Command::Compare(a) => compare_cmd(a, &mut out)?,
        Command::Score(a) => score(a, &mut out)?,
        Command::EpSeries(a) => ep_series_cmd(a, &mut out)?,
        Command::Regress(a) => regress(a, &mut out)?,
        Command::Forecast(a) => forecast(a, &mut out)?,
        Command::AucTest(a) => auc_test(a, &mut out)?,
        Command::Decompose(a) => decompose(a, &mut out)?,
    }
    out.write(cli.command.name(), argv, &cli.command)
}

#[derive(Serialize)]
struct BuildReport<'a> {
    terms: &'a [econlex::annotate::AggregatedTerm],
    disagreement_threshold: f64,
    min_flags: u32,
    flagged_for_disagreement: Vec<String>,
    removed: Vec<String>,
    kept: usize,
}

fn build_lexicon(a: &BuildLexiconArgs, out: &mut Outputs) -> Result<(), CliError> {
    out.input(&a.annotations)?;
    if let Some(p) = &a.review_flags {
        out.input(p)?;
    }
    if !(a.disagreement_threshold > 0.0 && a.disagreement_threshold <= 0.5) {
        return Err(CliError::Usage(format!(
            "--disagreement-threshold must be in (0, 0.5], got {}",
            a.disagreement_threshold
        )));
    }
    if a.min_flags < 1 {
        return Err(CliError::Usage("--min-flags must be at least 1".into()));
    }
    let report_path = sibling(&a.out, "report.json");
    out.plan_primary(&a.out)?;
    out.plan(&report_path)?;

    let file = File::open(&a.annotations).map_err(runtime)?;
    let sheets = parse_annotations(file).map_err(|e| CliError::Runtime(format!("{}: {e}", a.annotations.display())))?;
    let mut terms = sheets.iter().map(aggregate).collect::<Result<Vec<_>, _>>().map_err(runtime)?;
    let flagged = flag_disagreement(&terms, a.disagreement_threshold).map_err(runtime)?;
    for t in terms.iter_mut().filter(|t| flagged.contains(&t.term)) {
        t.ambiguous_flags = t.ambiguous_flags.max(a.min_flags);
    }
    let review = match &a.review_flags {
        Some(p) => parse_review_flags(File::open(p).map_err(runtime)?)
            .map_err(|e| CliError::Runtime(format!("{}: {e}", p.display())))?,
        None => HashMap::new(),
    };
    let lex = disambiguate(&a.name, &terms, &review, a.min_flags).map_err(runtime)?;
    let removed: Vec<String> = terms.iter().filter(|t| !lex.contains(&t.term)).map(|t| t.term.clone()).collect();
    eprintln!("{} terms aggregated, {} removed, {} kept", terms.len(), removed.len(), lex.len());

    let report = BuildReport {
        terms: &terms,
        disagreement_threshold: a.disagreement_threshold,
        min_flags: a.min_flags,
        flagged_for_disagreement: flagged,
        removed,
        kept: lex.len(),
    };
    out.add(&a.out, lex.to_delimited(LexiconFormat::from_path(&a.out)));
    out.add(&report_path, json(&report));
    Ok(())
}

fn relation_config(explicit: Option<&PathBuf>, out: &mut Outputs) -> Result<RelationConfig, CliError> {
    let path = match explicit {
        Some(p) => Some(p.clone()),
        None => std::env::var_os(CONFIG_DIR_ENV)
            .map(|d| PathBuf::from(d).join("relations.toml"))
            .filter(|p| p.is_file()),
    };
    let Some(path) = path else {
        return Ok(RelationConfig::default());
    };
    out.input(&path)?;
    let text = std::fs::read_to_string(&path).map_err(runtime)?;
    RelationConfig::from_toml_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn candidates(a: &CandidatesArgs, out: &mut Outputs) -> Result<(), CliError> {
    out.input(&a.conllu)?;
    out.input(&a.concepts)?;
    if let Some(v) = &a.votes {
        out.input(v)?;
    }
    let config = relation_config(a.relations.as_ref(), out)?;
    let shortlist_path = sibling(&a.out, "shortlist.txt");
    out.plan_primary(&a.out)?;
    if a.votes.is_some() {
        out.plan(&shortlist_path)?;
    }

    let concepts = econlex::corpus::ConceptList::parse(&std::fs::read_to_string(&a.concepts).map_err(runtime)?)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", a.concepts.display())))?;
    let file = File::open(&a.conllu).map_err(runtime)?;
    let sentences = parse_conllu(BufReader::new(file))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Runtime(format!("{}: {e}", a.conllu.display())))?;
    let phrases: Vec<_> = sentences
        .par_iter()
        .map(|s| extract_noun_phrases(s, &concepts, &config))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let key = match a.key {
        Key::Lemma => CountKey::Lemma,
        Key::Form => CountKey::Form,
    };
    let table = harvest_candidates(&phrases, a.min_count, key);
    eprintln!(
        "{} sentences, {} noun phrases, {} candidates with count >= {}",
        sentences.len(),
        phrases.len(),
        table.len(),
        a.min_count
    );
    if let Some(v) = &a.votes {
        let votes = parse_votes(&std::fs::read_to_string(v).map_err(runtime)?)
            .map_err(|e| CliError::Runtime(format!("{}: {e}", v.display())))?;
        let list = shortlist(&table, &votes, a.quorum).map_err(runtime)?;
        out.add(&shortlist_path, list.iter().map(|l| format!("{l}\n")).collect::<String>());
    }
    out.add(&a.out, table.to_tsv());
    Ok(())
}

fn compare_cmd(a: &CompareArgs, out: &mut Outputs) -> Result<(), CliError> {
    register_lexicon(out, &a.a)?;
    register_lexicon(out, &a.b)?;
    if let Some(p) = &a.out {
        out.plan_primary(p)?;
    }
    let report = compare(&load_lexicon(&a.a)?, &load_lexicon(&a.b)?);
    let text = json(&report);
    if matches!(a.format, OutputFormat::Table | OutputFormat::Both) {
        print!("{}", report.render_table());
    }
    if matches!(a.format, OutputFormat::Json | OutputFormat::Both) {
        print!("{text}");
    }
    if let Some(p) = &a.out {
        out.add(p, text);
    }
    Ok(())
}

fn warn_mode(lex: &Lexicon, mode: Mode) {
    if mode == Mode::Fine && lex.granularity() == Granularity::Categorical {
        log::warn!("lexicon {} is categorical; fine mode gives the same scores as categorical", lex.name());
    }
}

fn denominator(choice: DenominatorArg, corpus: &LoadedCorpus, freq: Frequency) -> Denominator {
    match choice {
        DenominatorArg::Filtered => Denominator::Filtered,
        DenominatorArg::All => Denominator::Totals(all_token_totals(&corpus.docs, freq)),
    }
}

fn score(a: &ScoreArgs, out: &mut Outputs) -> Result<(), CliError> {
    register_corpus(out, &a.corpus)?;
    register_lexicon(out, &a.lexicon)?;
    out.plan_primary(&a.out)?;

    let lex = load_lexicon(&a.lexicon)?;
    warn_mode(&lex, a.mode);
    let lex = match a.mode {
        Mode::Categorical => to_categorical(&lex),
        Mode::Fine => lex,
    };
    let corpus = load_corpus(&a.corpus)?;
    let records = extract_records(&corpus.docs, &corpus.concepts);
    let matcher = LexiconMatcher::new(&lex);
    let scores: Vec<_> = records.par_iter().map(|r| score_with(r, &matcher)).collect();

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["sentence_ref", "date", "pos_count", "neg_count", "count_score", "sum_score"])
        .map_err(runtime)?;
    for (r, s) in records.iter().zip(&scores) {
        w.write_record([
            s.sentence_ref.clone(),
            r.date.to_string(),
            s.pos_count.to_string(),
            s.neg_count.to_string(),
            s.count_score.to_string(),
            format!("{:?}", s.sum_score),
        ])
        .map_err(runtime)?;
    }
    let data = w.into_inner().map_err(runtime)?;
    eprintln!("{} economic sentences scored", records.len());
    out.add(&a.out, data);
    Ok(())
}

fn ep_series_cmd(a: &EpSeriesArgs, out: &mut Outputs) -> Result<(), CliError> {
    register_corpus(out, &a.corpus)?;
    register_lexicon(out, &a.lexicon)?;
    if a.smooth == 0 {
        return Err(CliError::Usage("--smooth must be at least 1".into()));
    }
    let meta_path = sibling(&a.out, "meta.json");
    out.plan_primary(&a.out)?;
    out.plan(&meta_path)?;

    let lex = load_lexicon(&a.lexicon)?;
    warn_mode(&lex, a.mode);
    let freq = Frequency::from(a.freq);
    let corpus = load_corpus(&a.corpus)?;
    let records = extract_records(&corpus.docs, &corpus.concepts);
    let denom = denominator(a.denominator, &corpus, freq);
    let mut series = ep_series(&records, &lex, a.mode.into(), freq, &denom).map_err(runtime)?;
    if a.standardize {
        series = standardize(&series).map_err(runtime)?;
    }
    if a.smooth > 1 {
        series = smooth(&series, a.smooth).map_err(runtime)?;
    }

    let mut meta = series.metadata();
    meta["transforms"] = serde_json::json!({
        "standardize": a.standardize,
        "smooth": a.smooth,
        "order": ["standardize", "smooth"],
    });
    meta["denominator"] = serde_json::json!(a.denominator);
    meta["granularity"] = serde_json::json!(lex.granularity());
    meta["lexicon_terms"] = serde_json::json!(lex.len());
    meta["economic_sentences"] = serde_json::json!(records.len());
    meta["ingest"] = serde_json::json!(corpus.stats);
    eprintln!("{} periods from {} economic sentences", series.values.len(), records.len());
    out.add(&a.out, series.to_csv());
    out.add(&meta_path, json(&meta));
    Ok(())
}

#[derive(Serialize)]
struct DesignSummary {
    target: String,
    columns: Vec<String>,
    n_obs: usize,
    first_period: Option<String>,
    last_period: Option<String>,
}

impl From<&DesignMatrix> for DesignSummary {
    fn from(d: &DesignMatrix) -> Self {
        let f = |p: Option<&chrono::NaiveDate>| p.map(|p| Frequency::Monthly.format(*p));
        DesignSummary {
            target: d.target_name.clone(),
            columns: d.column_names.clone(),
            n_obs: d.n_obs(),
            first_period: f(d.periods.first()),
            last_period: f(d.periods.last()),
        }
    }
}

#[derive(Serialize)]
struct FitOutput<'a> {
    design: DesignSummary,
    fit: &'a FitResult,
}

fn register_series(out: &mut Outputs, series: &[(String, PathBuf)]) -> Result<(), CliError> {
    series.iter().try_for_each(|(_, p)| out.input(p))
}

fn spec_for(s: &SeriesArgs) -> DesignSpec {
    DesignSpec::new(&s.target).ar_lags(s.ar_lags).regressors(&s.regressors)
}

fn regress(a: &RegressArgs, out: &mut Outputs) -> Result<(), CliError> {
    register_series(out, &a.series.series)?;
    out.plan_primary(&a.out)?;
    let set = load_series(&a.series.series)?;
    let design = build_design(&set, &spec_for(&a.series)).map_err(runtime)?;
    let fit = ols_newey_west(&design, a.bandwidth).map_err(runtime)?;
    print!("{}", render_fit_table(&[(a.series.target.clone(), &fit)]));
    out.add(&a.out, json(&FitOutput { design: (&design).into(), fit: &fit }));
    Ok(())
}

fn forecast(a: &ForecastArgs, out: &mut Outputs) -> Result<(), CliError> {
    register_series(out, &a.series.series)?;
    out.plan_primary(&a.out)?;
    let set = load_series(&a.series.series)?;
    let design = build_design(&set, &spec_for(&a.series).horizon(a.horizon)).map_err(runtime)?;
    let fit = logit_mle(&design, LogitOptions::default()).map_err(runtime)?;
    for w in &fit.warnings {
        log::warn!("{w}");
    }
    print!("{}", render_fit_table(&[(design.target_name.clone(), &fit)]));
    out.add(&a.out, json(&FitOutput { design: (&design).into(), fit: &fit }));
    Ok(())
}

#[derive(Serialize)]
struct HorizonResult {
    horizon: usize,
    n_obs: usize,
    first_period: Option<String>,
    last_period: Option<String>,
    aic_a: f64,
    aic_b: f64,
    converged_a: bool,
    converged_b: bool,
    comparison: AucComparison,
}

/// Columns of `full` restricted to the intercept and `names`, same rows.
fn select(full: &DesignMatrix, names: &[String]) -> Result<DesignMatrix, CliError> {
    let idx: Vec<usize> = full
        .column_names
        .iter()
        .enumerate()
        .filter(|(_, c)| *c == "const" || names.contains(c))
        .map(|(i, _)| i)
        .collect();
    let rows = full.rows.iter().map(|r| idx.iter().map(|&i| r[i]).collect()).collect();
    let cols = idx.iter().map(|&i| full.column_names[i].clone()).collect();
    let mut d = DesignMatrix::from_rows(cols, rows, full.target_name.clone(), full.target.clone()).map_err(runtime)?;
    d.periods = full.periods.clone();
    Ok(d)
}

fn linear_index(d: &DesignMatrix, beta: &[f64]) -> Vec<f64> {
    d.rows.iter().map(|r| r.iter().zip(beta).map(|(x, b)| x * b).sum()).collect()
}

fn auc_test(a: &AucTestArgs, out: &mut Outputs) -> Result<(), CliError> {
    register_series(out, &a.series)?;
    out.plan_primary(&a.out)?;
    if a.bootstrap == Some(0) {
        return Err(CliError::Usage("--bootstrap needs at least 1 draw".into()));
    }
    let set = load_series(&a.series)?;
    let mut union = a.model_a.clone();
    union.extend(a.model_b.iter().filter(|n| !a.model_a.contains(n)).cloned());

    let results = a
        .horizons
        .0
        .par_iter()
        .map(|&h| -> Result<HorizonResult, CliError> {
            let spec = DesignSpec::new(&a.target).horizon(h).regressors(&union);
            let full = build_design(&set, &spec).map_err(|e| CliError::Runtime(format!("horizon {h}: {e}")))?;
            let da = select(&full, &a.model_a)?;
            let db = select(&full, &a.model_b)?;
            let fit = |d: &DesignMatrix| {
                logit_mle(d, LogitOptions::default()).map_err(|e| CliError::Runtime(format!("horizon {h}: {e}")))
            };
            let (fa, fb) = (fit(&da)?, fit(&db)?);
            let sa = linear_index(&da, &fa.estimates());
            let sb = linear_index(&db, &fb.estimates());
            let labels: Vec<bool> = full.target.iter().map(|&y| y == 1.0).collect();
            let comparison = match a.bootstrap {
                Some(draws) => auc_compare_bootstrap(&sa, &sb, &labels, draws, a.seed),
                None => auc_compare(&sa, &sb, &labels),
            }
            .map_err(|e| CliError::Runtime(format!("horizon {h}: {e}")))?;
            let summary = DesignSummary::from(&full);
            Ok(HorizonResult {
                horizon: h,
                n_obs: full.n_obs(),
                first_period: summary.first_period,
                last_period: summary.last_period,
                aic_a: fa.aic,
                aic_b: fb.aic,
                converged_a: fa.converged,
                converged_b: fb.converged,
                comparison,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    println!("{:>3}  {:>5}  {:>7}  {:>7}  {:>8}", "h", "n", "AUC a", "AUC b", "p");
    for r in &results {
        let c = &r.comparison;
        println!("{:>3}  {:>5}  {:>7.4}  {:>7.4}  {:>8.4}", r.horizon, r.n_obs, c.auc_a, c.auc_b, c.p_value);
    }
    let body = serde_json::json!({
        "target": a.target,
        "model_a": a.model_a,
        "model_b": a.model_b,
        "results": results,
    });
    out.add(&a.out, json(&body));
    Ok(())
}

fn decompose(a: &DecomposeArgs, out: &mut Outputs) -> Result<(), CliError> {
    register_corpus(out, &a.corpus)?;
    register_lexicon(out, &a.lexicon)?;
    register_lexicon(out, &a.reference)?;
    out.plan_primary(&a.out)?;

    let base = load_lexicon(&a.lexicon)?;
    let reference = load_lexicon(&a.reference)?;
    let freq = Frequency::from(a.freq);
    let corpus = load_corpus(&a.corpus)?;
    let records = extract_records(&corpus.docs, &corpus.concepts);
    let denom = denominator(a.denominator, &corpus, freq);
    let d = delta_ep_decomposition(&records, &base, &reference, a.mode.into(), freq, &denom).map_err(runtime)?;
    out.add(&a.out, d.to_csv());
    Ok(())
}
