//! Record-oriented output in JSON lines, CSV or plain text.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::sync::mpsc;

use rayon::ThreadPool;
use ybhom::intlinalg::AbelianGroup;

use crate::config::Format;

/// One output record in every supported rendering.
pub trait Row {
    fn json(&self) -> serde_json::Value;
    fn plain(&self) -> String;
    fn csv(&self) -> Vec<String>;
}

pub enum Sink<'a> {
    Json(&'a mut dyn Write),
    Plain(&'a mut dyn Write),
    Csv(Box<csv::Writer<&'a mut dyn Write>>),
}

impl<'a> Sink<'a> {
    pub fn new(format: Format, out: &'a mut dyn Write, header: &[&str]) -> io::Result<Self> {
        Ok(match format {
            Format::Json => Sink::Json(out),
            Format::Plain => Sink::Plain(out),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(header).map_err(io::Error::from)?;
                w.flush()?;
                Sink::Csv(Box::new(w))
            }
        })
    }

    pub fn emit(&mut self, row: &dyn Row) -> io::Result<()> {
        match self {
            Sink::Json(out) => {
                writeln!(out, "{}", row.json())?;
                out.flush()
            }
            Sink::Plain(out) => {
                writeln!(out, "{}", row.plain())?;
                out.flush()
            }
            Sink::Csv(w) => {
                w.write_record(row.csv()).map_err(io::Error::from)?;
                w.flush()
            }
        }
    }

    /// Closing summary; CSV output stays purely tabular and omits it.
    pub fn summary(&mut self, json: serde_json::Value, plain: &str) -> io::Result<()> {
        match self {
            Sink::Json(out) => writeln!(out, "{json}"),
            Sink::Plain(out) => writeln!(out, "{plain}"),
            Sink::Csv(_) => Ok(()),
        }
    }
}

/// `rank=9;torsion=3`, with several torsion factors separated by `|`.
pub fn group_csv(g: &AbelianGroup) -> String {
    let torsion: Vec<String> = g.torsion.iter().map(|t| t.to_string()).collect();
    format!("rank={};torsion={}", g.free_rank, torsion.join("|"))
}

pub fn group_json(g: &AbelianGroup) -> serde_json::Value {
    serde_json::to_value(g).expect("groups serialize")
}

/// Runs `work` on every job in `pool` and hands results to `emit` in job
/// order as soon as each prefix is complete.
pub fn stream_ordered<J, T, W, E>(pool: &ThreadPool, jobs: &[J], work: W, mut emit: E) -> io::Result<()>
where
    J: Sync,
    T: Send,
    W: Fn(&J) -> T + Sync,
    E: FnMut(T) -> io::Result<()>,
{
    let (tx, rx) = mpsc::channel::<(usize, T)>();
    std::thread::scope(|s| {
        let work = &work;
        s.spawn(move || {
            pool.scope_fifo(|scope| {
                for (i, job) in jobs.iter().enumerate() {
                    let tx = tx.clone();
                    scope.spawn_fifo(move |_| {
                        let _ = tx.send((i, work(job)));
                    });
                }
            });
        });
        let mut pending = BTreeMap::new();
        let mut next = 0;
        let mut result = Ok(());
        for (i, value) in rx {
            pending.insert(i, value);
            while let Some(value) = pending.remove(&next) {
                if result.is_ok() {
                    result = emit(value);
                }
                next += 1;
            }
        }
        result
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_group_flattening() {
        assert_eq!(group_csv(&"Z^9 ⊕ Z_3".parse().unwrap()), "rank=9;torsion=3");
        assert_eq!(group_csv(&"Z_2 ⊕ Z_4".parse().unwrap()), "rank=0;torsion=2|4");
        assert_eq!(group_csv(&AbelianGroup::free(2)), "rank=2;torsion=");
    }

    #[test]
    fn ordered_streaming() {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let jobs: Vec<u64> = (0..40).collect();
        let mut seen = Vec::new();
        stream_ordered(
            &pool,
            &jobs,
            |&j| {
                std::thread::sleep(std::time::Duration::from_micros((40 - j) * 50));
                j * j
            },
            |v| {
                seen.push(v);
                Ok(())
            },
        )
        .unwrap();
        assert_eq!(seen, jobs.iter().map(|j| j * j).collect::<Vec<_>>());
    }
}
