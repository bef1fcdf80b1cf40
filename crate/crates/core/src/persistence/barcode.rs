use crate::error::{Error, Result};
use std::io;

/// One persistence interval. Infinite intervals record the filtration
/// ceiling as their death and set the flag; the class was still alive when
/// construction stopped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub birth: f64,
    pub death: f64,
    pub infinite: bool,
}

impl Interval {
    pub fn length(&self) -> f64 {
        self.death - self.birth
    }
}

/// Most bars one SVG panel will draw; see [`Barcode::write_svg`].
pub const MAX_BARS_PER_PANEL: usize = 200;

/// Indices of the intervals a panel draws, in stored (birth, death) order:
/// all of them when they fit, otherwise the `MAX_BARS_PER_PANEL` longest,
/// ties broken toward earlier storage position.
fn drawn_indices(intervals: &[Interval]) -> Vec<usize> {
    if intervals.len() <= MAX_BARS_PER_PANEL {
        return (0..intervals.len()).collect();
    }
    // (length desc, index asc) is a total order, so the elements placed
    // before the nth position are a deterministic set even though
    // select_nth leaves them unsorted.
    let longest_first = |&a: &usize, &b: &usize| {
        intervals[b]
            .length()
            .total_cmp(&intervals[a].length())
            .then(a.cmp(&b))
    };
    let mut indices: Vec<usize> = (0..intervals.len()).collect();
    indices.select_nth_unstable_by(MAX_BARS_PER_PANEL - 1, longest_first);
    let mut keep = indices[..MAX_BARS_PER_PANEL].to_vec();
    keep.sort_unstable();
    keep
}

/// Persistence intervals grouped by homology dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode {
    max_filtration: f64,
    dims: Vec<Vec<Interval>>,
}

impl Barcode {
    /// Intervals are sorted per dimension by (birth, death, finiteness) so
    /// serialized output depends only on the multiset of intervals.
    pub fn new(max_filtration: f64, mut dims: Vec<Vec<Interval>>) -> Self {
        for intervals in &mut dims {
            intervals.sort_by(|a, b| {
                a.birth
                    .total_cmp(&b.birth)
                    .then(a.death.total_cmp(&b.death))
                    .then(a.infinite.cmp(&b.infinite))
            });
        }
        Self {
            max_filtration,
            dims,
        }
    }

    pub fn max_filtration(&self) -> f64 {
        self.max_filtration
    }

    pub fn dims(&self) -> &[Vec<Interval>] {
        &self.dims
    }

    pub fn intervals(&self, dim: usize) -> &[Interval] {
        self.dims.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Betti numbers of the complex at filtration value t, one entry per
    /// tracked dimension. An interval [b, d) is alive at t when b <= t < d;
    /// infinite intervals stay alive from their birth on.
    pub fn betti_at(&self, t: f64) -> Vec<usize> {
        self.dims
            .iter()
            .map(|intervals| {
                intervals
                    .iter()
                    .filter(|iv| iv.birth <= t && (iv.infinite || t < iv.death))
                    .count()
            })
            .collect()
    }

    /// CSV with a schema comment line, then one row per interval ordered by
    /// (dimension, birth, death). Streams rows so large barcodes never have
    /// to exist as one contiguous string.
    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "# barcode schema_version=1 max_filtration={} dims={}",
            self.max_filtration,
            self.dims.len()
        )?;
        w.write_all(b"dimension,birth,death,is_infinite\n")?;
        for (d, intervals) in self.dims.iter().enumerate() {
            for iv in intervals {
                writeln!(w, "{d},{},{},{}", iv.birth, iv.death, iv.infinite)?;
            }
        }
        Ok(())
    }

    /// `write_csv` collected into a string, for callers that want the bytes
    /// in memory.
    pub fn to_csv(&self) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out)
            .expect("writing into a Vec cannot fail");
        String::from_utf8(out).expect("barcode CSV is ASCII")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let parse_err = |line: usize, message: &str| Error::Parse {
            line,
            message: message.to_string(),
        };
        let mut lines = text.lines().enumerate();

        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty barcode file"))?;
        let mut max_filtration = None;
        let mut n_dims = None;
        let mut version = None;
        if !header.starts_with('#') {
            return Err(parse_err(1, "missing schema comment line"));
        }
        for token in header.trim_start_matches('#').split_whitespace() {
            if let Some(v) = token.strip_prefix("schema_version=") {
                version = Some(v.to_string());
            } else if let Some(v) = token.strip_prefix("max_filtration=") {
                max_filtration =
                    Some(v.parse::<f64>().map_err(|e| parse_err(1, &e.to_string()))?);
            } else if let Some(v) = token.strip_prefix("dims=") {
                n_dims = Some(v.parse::<usize>().map_err(|e| parse_err(1, &e.to_string()))?);
            }
        }
        match version.as_deref() {
            Some("1") => {}
            Some(other) => {
                return Err(parse_err(1, &format!("unsupported schema_version {other}")))
            }
            None => return Err(parse_err(1, "missing schema_version")),
        }
        let max_filtration =
            max_filtration.ok_or_else(|| parse_err(1, "missing max_filtration"))?;
        let n_dims = n_dims.ok_or_else(|| parse_err(1, "missing dims"))?;

        let (_, cols) = lines
            .next()
            .ok_or_else(|| parse_err(2, "missing column header"))?;
        if cols.trim() != "dimension,birth,death,is_infinite" {
            return Err(parse_err(2, "unexpected column header"));
        }

        let mut dims: Vec<Vec<Interval>> = vec![Vec::new(); n_dims];
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(parse_err(line_no, "expected 4 fields"));
            }
            let d: usize = fields[0]
                .parse()
                .map_err(|_| parse_err(line_no, "bad dimension"))?;
            if d >= n_dims {
                return Err(parse_err(line_no, "dimension exceeds header dims"));
            }
            let birth: f64 = fields[1]
                .parse()
                .map_err(|_| parse_err(line_no, "bad birth"))?;
            let death: f64 = fields[2]
                .parse()
                .map_err(|_| parse_err(line_no, "bad death"))?;
            let infinite = match fields[3].trim() {
                "true" => true,
                "false" => false,
                _ => return Err(parse_err(line_no, "bad is_infinite flag")),
            };
            dims[d].push(Interval {
                birth,
                death,
                infinite,
            });
        }
        Ok(Self::new(max_filtration, dims))
    }

    /// Renders the barcode as a standalone SVG, one panel per dimension.
    /// A dashed line marks `threshold_fraction * max_filtration`, the
    /// persistence cutoff used when reading off Betti numbers.
    ///
    /// Noisy witness filtrations can carry tens of millions of short
    /// intervals; drawing them all would make the document unusable (and
    /// gigabytes long), so each panel shows at most [`MAX_BARS_PER_PANEL`]
    /// bars, keeping the longest and saying how many were left out. Panel
    /// geometry depends only on interval counts, so the layout is computed
    /// up front and the body streams one element at a time.
    pub fn write_svg<W: io::Write>(&self, threshold_fraction: f64, mut w: W) -> io::Result<()> {
        const WIDTH: f64 = 860.0;
        const LEFT: f64 = 70.0;
        const RIGHT: f64 = 20.0;
        const BAR_H: f64 = 6.0;
        const BAR_GAP: f64 = 3.0;
        const PANEL_PAD: f64 = 30.0;

        let plot_w = WIDTH - LEFT - RIGHT;
        let scale = |v: f64| LEFT + plot_w * (v / self.max_filtration.max(f64::MIN_POSITIVE));

        let mut panel_tops = Vec::with_capacity(self.dims.len());
        let mut y = 10.0;
        for intervals in &self.dims {
            panel_tops.push(y);
            let n_rows = intervals.len().min(MAX_BARS_PER_PANEL).max(1);
            let panel_bottom = y + 22.0 + n_rows as f64 * (BAR_H + BAR_GAP) + 6.0;
            y = panel_bottom + PANEL_PAD;
        }
        let total_h = y + 20.0;
        let thr_x = scale(threshold_fraction * self.max_filtration);

        write!(
            w,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{total_h:.0}\" viewBox=\"0 0 {WIDTH} {total_h:.0}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        )?;
        for (d, intervals) in self.dims.iter().enumerate() {
            let y = panel_tops[d];
            let shown = drawn_indices(intervals);
            let label = if shown.len() < intervals.len() {
                format!(
                    "H{d} ({} intervals, showing longest {})",
                    intervals.len(),
                    shown.len()
                )
            } else {
                format!("H{d} ({} intervals)", intervals.len())
            };
            write!(
                w,
                "<text x=\"10\" y=\"{:.1}\" font-size=\"14\" font-family=\"sans-serif\">{label}</text>\n",
                y + 14.0
            )?;
            let bars_top = y + 22.0;
            for (row, &i) in shown.iter().enumerate() {
                let iv = &intervals[i];
                let by = bars_top + row as f64 * (BAR_H + BAR_GAP);
                let x0 = scale(iv.birth);
                let x1 = scale(if iv.infinite { self.max_filtration } else { iv.death });
                let bw = (x1 - x0).max(1.0);
                let color = if iv.infinite { "#bb5566" } else { "#4477aa" };
                write!(
                    w,
                    "<rect x=\"{x0:.2}\" y=\"{by:.2}\" width=\"{bw:.2}\" height=\"{BAR_H}\" fill=\"{color}\"/>\n"
                )?;
                if iv.infinite {
                    write!(
                        w,
                        "<path d=\"M {x:.2} {ay:.2} l 8 {half} l -8 {half} z\" fill=\"{color}\"/>\n",
                        x = WIDTH - RIGHT,
                        ay = by,
                        half = BAR_H / 2.0
                    )?;
                }
            }
            let n_rows = shown.len().max(1);
            let panel_bottom = bars_top + n_rows as f64 * (BAR_H + BAR_GAP) + 6.0;
            write!(
                w,
                "<line x1=\"{LEFT}\" y1=\"{pb:.1}\" x2=\"{:.1}\" y2=\"{pb:.1}\" stroke=\"#888\"/>\n",
                WIDTH - RIGHT,
                pb = panel_bottom
            )?;
        }
        write!(
            w,
            "<line x1=\"{thr_x:.2}\" y1=\"0\" x2=\"{thr_x:.2}\" y2=\"{total_h:.0}\" stroke=\"#333\" stroke-dasharray=\"6 4\"/>\n\
             <text x=\"{tx:.2}\" y=\"{ty:.0}\" font-size=\"11\" font-family=\"sans-serif\">cutoff {frac:.2} x {mf}</text>\n\
             <text x=\"{LEFT}\" y=\"{ty:.0}\" font-size=\"11\" font-family=\"sans-serif\">0</text>\n\
             <text x=\"{rx:.1}\" y=\"{ty:.0}\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"end\">{mf}</text>\n</svg>\n",
            tx = thr_x + 4.0,
            ty = total_h - 6.0,
            frac = threshold_fraction,
            mf = self.max_filtration,
            rx = WIDTH - RIGHT,
        )?;
        Ok(())
    }

    /// `write_svg` collected into a string.
    pub fn to_svg(&self, threshold_fraction: f64) -> String {
        let mut out = Vec::new();
        self.write_svg(threshold_fraction, &mut out)
            .expect("writing into a Vec cannot fail");
        String::from_utf8(out).expect("barcode SVG is ASCII")
    }
}
