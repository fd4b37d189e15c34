use super::FitResult;

fn stars(p: f64) -> &'static str {
    if p < 0.01 {
        "***"
    } else if p < 0.05 {
        "**"
    } else if p < 0.1 {
        "*"
    } else {
        ""
    }
}

/// Side-by-side regression table: estimates with significance stars, standard
/// errors in parentheses beneath, then fit statistics.
pub fn render_fit_table(columns: &[(String, &FitResult)]) -> String {
    let mut names: Vec<&str> = Vec::new();
    for (_, fit) in columns {
        for c in &fit.coefficients {
            if !names.contains(&c.name.as_str()) {
                names.push(&c.name);
            }
        }
    }

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header = vec![String::new()];
    header.extend(columns.iter().map(|(label, _)| label.clone()));
    rows.push(header);
    for name in &names {
        let mut est = vec![name.to_string()];
        let mut se = vec![String::new()];
        for (_, fit) in columns {
            match fit.coefficient(name) {
                Some(c) => {
                    est.push(format!("{:.4}{}", c.estimate, stars(c.p_value)));
                    se.push(format!("({:.4})", c.std_error));
                }
                None => {
                    est.push(String::new());
                    se.push(String::new());
                }
            }
        }
        rows.push(est);
        rows.push(se);
    }

    let stat = |label: &str, f: &dyn Fn(&FitResult) -> Option<String>| {
        let mut row = vec![label.to_string()];
        row.extend(columns.iter().map(|(_, fit)| f(fit).unwrap_or_default()));
        row
    };
    let mut footer = vec![stat("Obs.", &|f| Some(f.n_obs.to_string()))];
    if columns.iter().any(|(_, f)| f.r2.is_some()) {
        footer.push(stat("R2", &|f| f.r2.map(|v| format!("{v:.4}"))));
        footer.push(stat("Adj. R2", &|f| f.adj_r2.map(|v| format!("{v:.4}"))));
    }
    footer.push(stat("Log lik.", &|f| Some(format!("{:.3}", f.log_likelihood))));
    footer.push(stat("AIC", &|f| Some(format!("{:.3}", f.aic))));

    let ncol = columns.len() + 1;
    let widths: Vec<usize> = (0..ncol)
        .map(|j| rows.iter().chain(&footer).map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let total: usize = widths.iter().sum::<usize>() + 2 * (ncol - 1);
    let line = |r: &Vec<String>| {
        let mut s = format!("{:<w$}", r[0], w = widths[0]);
        for j in 1..ncol {
            s.push_str(&format!("  {:>w$}", r[j], w = widths[j]));
        }
        s.trim_end().to_string() + "\n"
    };

    let rule = "-".repeat(total) + "\n";
    let mut out = line(&rows[0]);
    out.push_str(&rule);
    for r in &rows[1..] {
        out.push_str(&line(r));
    }
    out.push_str(&rule);
    for r in &footer {
        out.push_str(&line(r));
    }
    out.push_str("* p<0.1, ** p<0.05, *** p<0.01\n");
    out
}
