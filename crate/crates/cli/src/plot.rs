//! gnuplot script emission for sweep CSVs.

use std::fmt::Write;

use crate::report::SweepRow;

/// Whitespace-separated data file, one row per grid point.
pub fn data_file(rows: &[SweepRow]) -> String {
    let mut s = String::from(
        "# pe module_avail majority_avail prob_avail majority_errors prob_errors trials\n",
    );
    for row in rows {
        s.push_str(&row.text.join(" "));
        s.push('\n');
    }
    s
}

/// Two side-by-side charts: availability vs. pe for the module and both
/// voters, and output errors vs. pe for both voters.
pub fn script(rows: &[SweepRow], data_name: &str, image_name: &str, csv_name: &str) -> String {
    let log_x = rows.iter().all(|r| r.values[0] > 0.0);
    let analytic = rows.iter().all(|r| r.values[6] == 0.0);
    let errors_label = if analytic {
        "expected errors at system output"
    } else {
        "errors at system output"
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# generated by pvote {} from {csv_name}",
        env!("CARGO_PKG_VERSION")
    );
    let _ = writeln!(s, "# run from this file's directory: gnuplot <script>");
    s.push_str("set terminal pngcairo size 1200,480\n");
    let _ = writeln!(s, "set output '{image_name}'");
    s.push_str("set multiplot layout 1,2\n");
    if log_x {
        s.push_str("set logscale x\n");
    }
    s.push_str("set grid\n");
    s.push_str("set xlabel 'wire flip probability pe'\n");
    s.push_str("set ylabel 'availability'\n");
    s.push_str("set key bottom left\n");
    let _ = writeln!(
        s,
        "plot '{data_name}' using 1:2 with linespoints title 'module', \\\n     \
         '' using 1:3 with linespoints title 'majority voter', \\\n     \
         '' using 1:4 with linespoints title 'probabilistic voter'"
    );
    let _ = writeln!(s, "set ylabel '{errors_label}'");
    s.push_str("set key top left\n");
    let _ = writeln!(
        s,
        "plot '{data_name}' using 1:5 with linespoints title 'majority voter', \\\n     \
         '' using 1:6 with linespoints title 'probabilistic voter'"
    );
    s.push_str("unset multiplot\n");
    s
}
