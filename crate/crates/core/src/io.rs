//! Reading and writing contexts in the Burmeister `.cxt` format and a plain
//! CSV cross table.
//!
//! A cxt file looks like this:
//!
//! ```text
//! B
//! <context name, may be empty>
//! <number of objects>
//! <number of attributes>
//!
//! <one object name per line>
//! <one attribute name per line>
//! <one incidence row per object, X or x for a cross and . for a blank>
//! ```
//!
//! The CSV form has a header `,attr1,attr2,...` and one row
//! `object,c1,...,cM` per object with cells in `0 1 x X .`.

use std::path::Path;
use std::str::FromStr;

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Cxt,
    Csv,
}

impl Format {
    /// Guesses the format from a file extension, defaulting to cxt.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Cxt,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "cxt" => Ok(Format::Cxt),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown context format {other:?} (expected cxt or csv)")),
        }
    }
}

pub fn parse_context(bytes: &[u8], format: Format) -> Result<FormalContext> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::InvalidUtf8)?;
    match format {
        Format::Cxt => parse_cxt(text),
        Format::Csv => parse_csv(text),
    }
}

pub fn write_context(ctx: &FormalContext, format: Format) -> Vec<u8> {
    match format {
        Format::Cxt => write_cxt(ctx).into_bytes(),
        Format::Csv => write_csv(ctx),
    }
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        Lines {
            lines: text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l)).collect(),
            pos: 0,
        }
    }

    fn peek(&self, ahead: usize) -> Option<&'a str> {
        self.lines.get(self.pos + ahead).copied()
    }

    fn line_number(&self) -> usize {
        self.pos + 1
    }

    fn next(&mut self) -> Option<&'a str> {
        let line = self.peek(0)?;
        self.pos += 1;
        Some(line)
    }
}

fn parse_count(line: Option<&str>, at: usize, what: &str) -> Result<usize> {
    let line = line.ok_or_else(|| Error::Malformed {
        line: at,
        message: format!("missing {what} count"),
    })?;
    line.trim().parse().map_err(|_| Error::Malformed {
        line: at,
        message: format!("expected {what} count, found {line:?}"),
    })
}

fn is_count(line: Option<&str>) -> bool {
    line.is_some_and(|l| l.trim().parse::<usize>().is_ok())
}

fn parse_cxt(text: &str) -> Result<FormalContext> {
    let mut lines = Lines::new(text);
    match lines.next() {
        Some(l) if l.trim() == "B" => {}
        other => {
            return Err(Error::Malformed {
                line: 1,
                message: format!("expected header \"B\", found {:?}", other.unwrap_or("")),
            })
        }
    }

    // The name line may be omitted; it is present unless the next two lines are
    // the counts followed by something that is not a count.
    let name_present = !is_count(lines.peek(0)) || (is_count(lines.peek(1)) && is_count(lines.peek(2)));
    let name = if name_present {
        lines.next().unwrap_or("").to_owned()
    } else {
        String::new()
    };

    let at = lines.line_number();
    let object_count = parse_count(lines.next(), at, "object")?;
    let at = lines.line_number();
    let attribute_count = parse_count(lines.next(), at, "attribute")?;
    if lines.peek(0).is_some_and(|l| l.trim().is_empty()) {
        lines.next();
    }

    let mut read_names = |count: usize, what: &'static str| -> Result<Vec<String>> {
        let mut names = Vec::with_capacity(count);
        for found in 0..count {
            match lines.next() {
                Some(l) => names.push(l.to_owned()),
                None => {
                    return Err(Error::DimensionMismatch {
                        what,
                        declared: count,
                        found,
                    })
                }
            }
        }
        Ok(names)
    };
    let objects = read_names(object_count, "object names")?;
    let attributes = read_names(attribute_count, "attribute names")?;

    let mut rows = Vec::with_capacity(object_count);
    while let Some(line) = lines.peek(0) {
        let row = line.trim_end();
        if row.is_empty() {
            break;
        }
        let line_no = lines.line_number();
        lines.next();
        let cells: Vec<char> = row.chars().collect();
        if rows.len() == object_count {
            rows.push(BitSet::empty(0));
            continue;
        }
        if cells.len() != attribute_count {
            return Err(Error::Malformed {
                line: line_no,
                message: format!("incidence row has {} cells, expected {attribute_count}", cells.len()),
            });
        }
        let mut set = BitSet::empty(attribute_count);
        for (j, c) in cells.into_iter().enumerate() {
            match c {
                'X' | 'x' => set.insert(j),
                '.' => {}
                other => {
                    return Err(Error::IllegalCell {
                        line: line_no,
                        found: other.to_string(),
                    })
                }
            }
        }
        rows.push(set);
    }
    if let Some(extra) = (lines.pos..lines.lines.len()).find(|&i| !lines.lines[i].trim().is_empty()) {
        return Err(Error::Malformed {
            line: extra + 1,
            message: "unexpected content after incidence rows".into(),
        });
    }
    if rows.len() != object_count {
        return Err(Error::DimensionMismatch {
            what: "incidence rows",
            declared: object_count,
            found: rows.len(),
        });
    }
    Ok(FormalContext::new(objects, attributes, rows)?.with_name(name))
}

fn write_cxt(ctx: &FormalContext) -> String {
    let mut out = String::new();
    out.push_str("B\n");
    out.push_str(ctx.name());
    out.push('\n');
    out.push_str(&format!("{}\n{}\n\n", ctx.object_count(), ctx.attribute_count()));
    for name in ctx.objects().iter().chain(ctx.attributes()) {
        out.push_str(name);
        out.push('\n');
    }
    for g in 0..ctx.object_count() {
        out.extend((0..ctx.attribute_count()).map(|m| if ctx.incident(g, m) { 'X' } else { '.' }));
        out.push('\n');
    }
    out
}

fn parse_csv(text: &str) -> Result<FormalContext> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        Some(h) => h?,
        None => return FormalContext::anonymous(&[], 0),
    };
    let attributes: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    let mut objects = Vec::new();
    let mut rows = Vec::new();
    for record in records {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != attributes.len() + 1 {
            return Err(Error::Malformed {
                line,
                message: format!(
                    "row has {} cells, expected {}",
                    record.len().saturating_sub(1),
                    attributes.len()
                ),
            });
        }
        objects.push(record[0].to_owned());
        let mut set = BitSet::empty(attributes.len());
        for (j, cell) in record.iter().skip(1).enumerate() {
            match cell.trim() {
                "1" | "x" | "X" => set.insert(j),
                "0" | "." => {}
                other => {
                    return Err(Error::IllegalCell {
                        line,
                        found: other.to_owned(),
                    })
                }
            }
        }
        rows.push(set);
    }
    FormalContext::new(objects, attributes, rows)
}

fn write_csv(ctx: &FormalContext) -> Vec<u8> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let header = std::iter::once("").chain(ctx.attributes().iter().map(String::as_str));
    // Writing into a Vec cannot fail.
    writer.write_record(header).expect("in-memory csv write");
    for g in 0..ctx.object_count() {
        let cells = (0..ctx.attribute_count()).map(|m| if ctx.incident(g, m) { "1" } else { "0" });
        writer
            .write_record(std::iter::once(ctx.objects()[g].as_str()).chain(cells))
            .expect("in-memory csv write");
    }
    writer.into_inner().expect("in-memory csv flush")
}
