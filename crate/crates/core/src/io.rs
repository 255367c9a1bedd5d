//! Mesh file formats: OFF, OBJ and STL (ascii and binary) readers, OFF and
//! OBJ writers, and the PVOL volume format which keeps implicit vertices.

use crate::bsp::{BspCell, BspComplex, BspEdge, BspFacet, BspVertex, Color, LineDef, SplitStats, VertexDef, OUTER};
use crate::error::{Error, Result};
use crate::soup::{Constraint, Origin, Soup};
use crate::solid::SurfaceMesh;
use polycell_predicates::{GenericPoint, Point3};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Off,
    Obj,
    Stl,
    Pvol,
}

impl Format {
    pub fn from_name(s: &str) -> Result<Format> {
        match s.to_ascii_lowercase().as_str() {
            "off" => Ok(Format::Off),
            "obj" => Ok(Format::Obj),
            "stl" => Ok(Format::Stl),
            "pvol" => Ok(Format::Pvol),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }

    pub fn from_path(p: &Path) -> Result<Format> {
        let ext = p.extension().and_then(|e| e.to_str()).unwrap_or("");
        Format::from_name(ext).map_err(|_| Error::UnsupportedFormat(format!("{}", p.display())))
    }
}

/// Vertices and polygonal faces as read from a surface file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SurfaceFile {
    pub vertices: Vec<Point3>,
    pub faces: Vec<Vec<u32>>,
}

impl SurfaceFile {
    /// Fan-triangulated soup.
    pub fn to_soup(&self) -> Soup {
        Soup {
            vertices: self.vertices.clone(),
            triangles: self
                .faces
                .iter()
                .flat_map(|f| (1..f.len().saturating_sub(1)).map(move |i| [f[0], f[i], f[i + 1]]))
                .collect(),
        }
    }
}

impl From<&SurfaceMesh> for SurfaceFile {
    fn from(m: &SurfaceMesh) -> Self {
        SurfaceFile {
            vertices: m.vertices.clone(),
            faces: m.faces.clone(),
        }
    }
}

/// Shortest decimal that parses back to the same double.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    let x: f64 = tok
        .parse()
        .map_err(|_| Error::parse(format!("line {line}"), format!("bad number '{tok}'")))?;
    if !x.is_finite() {
        return Err(Error::parse(format!("line {line}"), format!("non-finite coordinate '{tok}'")));
    }
    Ok(x)
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(format!("line {line}"), format!("bad integer '{tok}'")))
}

fn check_faces(f: &SurfaceFile) -> Result<()> {
    let n = f.vertices.len();
    for (i, face) in f.faces.iter().enumerate() {
        if face.len() < 3 {
            return Err(Error::parse(format!("face {i}"), "fewer than three vertices"));
        }
        if let Some(&v) = face.iter().find(|&&v| v as usize >= n) {
            return Err(Error::parse(format!("face {i}"), format!("vertex index {v} out of range")));
        }
    }
    Ok(())
}

/// OFF reader; trailing per-face fields such as colors are ignored.
pub fn read_off(text: &str) -> Result<SurfaceFile> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    let mut rows = lines.iter();
    let (l, head) = rows.next().ok_or_else(|| Error::parse("line 1", "empty file"))?;
    let mut counts: Vec<&str> = Vec::new();
    if head[0] == "OFF" {
        counts.extend(&head[1..]);
    } else if let Some(rest) = head[0].strip_prefix("OFF") {
        return Err(Error::parse(format!("line {l}"), format!("unsupported OFF variant '{rest}'")));
    } else {
        return Err(Error::parse(format!("line {l}"), "missing OFF header"));
    }
    let mut last = *l;
    while counts.len() < 3 {
        let (l, t) = rows.next().ok_or_else(|| Error::parse("end of file", "expected counts"))?;
        counts.extend(t);
        last = *l;
    }
    let nv = parse_usize(counts[0], last)?;
    let nf = parse_usize(counts[1], last)?;
    let mut f = SurfaceFile::default();
    for _ in 0..nv {
        let (l, t) = rows.next().ok_or_else(|| Error::parse("end of file", "expected a vertex"))?;
        if t.len() < 3 {
            return Err(Error::parse(format!("line {l}"), "vertex needs three coordinates"));
        }
        f.vertices.push([parse_f64(t[0], *l)?, parse_f64(t[1], *l)?, parse_f64(t[2], *l)?]);
    }
    for _ in 0..nf {
        let (l, t) = rows.next().ok_or_else(|| Error::parse("end of file", "expected a face"))?;
        let k = parse_usize(t[0], *l)?;
        if t.len() < k + 1 {
            return Err(Error::parse(format!("line {l}"), "face line too short"));
        }
        f.faces.push(t[1..=k].iter().map(|s| parse_usize(s, *l).map(|x| x as u32)).collect::<Result<_>>()?);
    }
    check_faces(&f)?;
    Ok(f)
}

pub fn read_obj(text: &str) -> Result<SurfaceFile> {
    let mut f = SurfaceFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut t = raw.split('#').next().unwrap_or("").split_whitespace();
        match t.next() {
            Some("v") => {
                let c: Vec<&str> = t.collect();
                if c.len() < 3 {
                    return Err(Error::parse(format!("line {line}"), "vertex needs three coordinates"));
                }
                f.vertices.push([parse_f64(c[0], line)?, parse_f64(c[1], line)?, parse_f64(c[2], line)?]);
            }
            Some("f") => {
                let mut face = Vec::new();
                for tok in t {
                    let idx = tok.split('/').next().unwrap_or("");
                    let k: i64 = idx
                        .parse()
                        .map_err(|_| Error::parse(format!("line {line}"), format!("bad index '{tok}'")))?;
                    let n = f.vertices.len() as i64;
                    let v = if k < 0 { n + k } else { k - 1 };
                    if v < 0 {
                        return Err(Error::parse(format!("line {line}"), format!("index {k} out of range")));
                    }
                    face.push(v as u32);
                }
                f.faces.push(face);
            }
            _ => {}
        }
    }
    check_faces(&f)?;
    Ok(f)
}

fn read_stl_binary(data: &[u8]) -> Result<SurfaceFile> {
    let n = u32::from_le_bytes(data[80..84].try_into().unwrap()) as usize;
    let mut f = SurfaceFile::default();
    for i in 0..n {
        let rec = &data[84 + 50 * i..84 + 50 * (i + 1)];
        let base = f.vertices.len() as u32;
        for k in 0..3 {
            let mut p = [0.0; 3];
            for (j, x) in p.iter_mut().enumerate() {
                let o = 12 + 12 * k + 4 * j;
                *x = f32::from_le_bytes(rec[o..o + 4].try_into().unwrap()) as f64;
                if !x.is_finite() {
                    return Err(Error::parse(format!("byte {}", 84 + 50 * i + o), "non-finite coordinate"));
                }
            }
            f.vertices.push(p);
        }
        f.faces.push(vec![base, base + 1, base + 2]);
    }
    Ok(f)
}

fn read_stl_ascii(text: &str) -> Result<SurfaceFile> {
    let mut f = SurfaceFile::default();
    let mut pending = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let mut t = raw.split_whitespace();
        match t.next() {
            Some("vertex") => {
                let c: Vec<&str> = t.collect();
                if c.len() < 3 {
                    return Err(Error::parse(format!("line {}", i + 1), "vertex needs three coordinates"));
                }
                pending.push(f.vertices.len() as u32);
                f.vertices.push([parse_f64(c[0], i + 1)?, parse_f64(c[1], i + 1)?, parse_f64(c[2], i + 1)?]);
            }
            Some("endloop") => {
                if pending.len() < 3 {
                    return Err(Error::parse(format!("line {}", i + 1), "facet with fewer than three vertices"));
                }
                f.faces.push(std::mem::take(&mut pending));
            }
            _ => {}
        }
    }
    Ok(f)
}

pub fn read_stl(data: &[u8]) -> Result<SurfaceFile> {
    if data.len() >= 84 {
        let n = u32::from_le_bytes(data[80..84].try_into().unwrap()) as usize;
        if data.len() == 84 + 50 * n {
            return read_stl_binary(data);
        }
    }
    let text = std::str::from_utf8(data).map_err(|_| Error::parse("byte 0", "neither binary nor ascii STL"))?;
    if !text.trim_start().starts_with("solid") {
        return Err(Error::parse("line 1", "missing 'solid' header"));
    }
    read_stl_ascii(text)
}

/// Reads a surface file in the given format.
pub fn read_surface_bytes(data: &[u8], format: Format) -> Result<SurfaceFile> {
    let text = || std::str::from_utf8(data).map_err(|_| Error::parse("byte 0", "file is not valid UTF-8"));
    match format {
        Format::Off => read_off(text()?),
        Format::Obj => read_obj(text()?),
        Format::Stl => read_stl(data),
        Format::Pvol => Err(Error::UnsupportedFormat("pvol is a volume format".into())),
    }
}

pub fn read_surface(path: &Path, format: Option<Format>) -> Result<SurfaceFile> {
    let format = match format {
        Some(f) => f,
        None => Format::from_path(path)?,
    };
    read_surface_bytes(&std::fs::read(path)?, format)
}

pub fn write_off(f: &SurfaceFile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "OFF\n{} {} 0", f.vertices.len(), f.faces.len());
    for p in &f.vertices {
        let _ = writeln!(s, "{} {} {}", fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(p[2]));
    }
    for face in &f.faces {
        let _ = write!(s, "{}", face.len());
        for v in face {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    s
}

/// OBJ with polygonal faces fan-triangulated.
pub fn write_obj(f: &SurfaceFile) -> String {
    let mut s = String::new();
    for p in &f.vertices {
        let _ = writeln!(s, "v {} {} {}", fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(p[2]));
    }
    for face in &f.faces {
        for i in 1..face.len() - 1 {
            let _ = writeln!(s, "f {} {} {}", face[0] + 1, face[i] + 1, face[i + 1] + 1);
        }
    }
    s
}

pub fn write_surface(f: &SurfaceFile, path: &Path, format: Option<Format>) -> Result<()> {
    let format = match format {
        Some(f) => f,
        None => Format::from_path(path)?,
    };
    let text = match format {
        Format::Off => write_off(f),
        Format::Obj => write_obj(f),
        other => return Err(Error::UnsupportedFormat(format!("cannot write a surface as {other:?}"))),
    };
    std::fs::write(path, text)?;
    Ok(())
}

fn cell_id(c: u32) -> String {
    if c == OUTER {
        "-1".into()
    } else {
        c.to_string()
    }
}

fn list(s: &mut String, items: &[u32]) {
    let _ = write!(s, " {}", items.len());
    for x in items {
        let _ = write!(s, " {x}");
    }
}

/// Serializes a complex, with optional per-cell IN labels.
pub fn write_pvol(cx: &BspComplex, inside: Option<&[bool]>) -> String {
    let mut s = String::from("PVOL 1\n");
    let _ = writeln!(s, "points {}", cx.points.len());
    for p in &cx.points {
        let _ = writeln!(s, "p {} {} {}", fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(p[2]));
    }
    let _ = writeln!(s, "constraints {}", cx.constraints.len());
    for c in &cx.constraints {
        let o = match c.origin {
            Origin::A => 'A',
            Origin::B => 'B',
            Origin::Virtual => 'V',
        };
        let _ = writeln!(s, "k {} {} {} {o}", c.v[0], c.v[1], c.v[2]);
    }
    let _ = writeln!(s, "vertices {}", cx.vertices.len());
    for v in &cx.vertices {
        match v.def {
            VertexDef::Explicit(i) => {
                let _ = writeln!(s, "v e {i}");
            }
            VertexDef::Lpi { line, plane } => {
                let _ = writeln!(s, "v l {} {} {} {} {}", line[0], line[1], plane[0], plane[1], plane[2]);
            }
            VertexDef::Tpi(p) => {
                let _ = write!(s, "v t");
                for x in p.iter().flatten() {
                    let _ = write!(s, " {x}");
                }
                s.push('\n');
            }
        }
    }
    let _ = writeln!(s, "edges {}", cx.edges.len());
    for e in &cx.edges {
        let _ = write!(s, "e {} {}", e.v[0], e.v[1]);
        match e.line {
            LineDef::Points([a, b]) => {
                let _ = write!(s, " p {a} {b}");
            }
            LineDef::Planes([x, y]) => {
                let _ = write!(s, " q {} {} {} {} {} {}", x[0], x[1], x[2], y[0], y[1], y[2]);
            }
        }
        list(&mut s, &e.facets);
        s.push('\n');
    }
    let _ = writeln!(s, "facets {}", cx.facets.len());
    for f in &cx.facets {
        let color = match f.color {
            Color::White => 'W',
            Color::Grey => 'G',
            Color::Black => 'B',
        };
        let flags = match (f.black_a, f.black_b) {
            (false, false) => "-",
            (true, false) => "A",
            (false, true) => "B",
            (true, true) => "AB",
        };
        let _ = write!(
            s,
            "f {} {} {color} {flags} {} {} {}",
            cell_id(f.cells[0]),
            cell_id(f.cells[1]),
            f.plane[0],
            f.plane[1],
            f.plane[2]
        );
        list(&mut s, &f.verts);
        list(&mut s, &f.edges);
        list(&mut s, &f.coplanar);
        s.push('\n');
    }
    let _ = writeln!(s, "cells {}", cx.cells.len());
    for (i, c) in cx.cells.iter().enumerate() {
        let label = match inside {
            Some(l) if l[i] => "IN",
            Some(_) => "OUT",
            None => "-",
        };
        let _ = write!(s, "c {label}");
        list(&mut s, &c.facets);
        list(&mut s, &c.pending);
        s.push('\n');
    }
    s.push_str("end\n");
    s
}

struct Reader<'a> {
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    line: usize,
    toks: Vec<&'a str>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            lines: text.lines().enumerate().peekable(),
            line: 0,
            toks: Vec::new(),
            pos: 0,
        }
    }

    fn err(&self, m: impl Into<String>) -> Error {
        Error::parse(format!("line {}", self.line), m)
    }

    /// Advances to the next non-empty line, which must start with `tag`.
    fn record(&mut self, tag: &str) -> Result<()> {
        loop {
            let Some((i, l)) = self.lines.next() else {
                return Err(Error::parse("end of file", format!("expected '{tag}'")));
            };
            self.line = i + 1;
            self.toks = l.split_whitespace().collect();
            if !self.toks.is_empty() {
                break;
            }
        }
        self.pos = 1;
        if self.toks[0] != tag {
            return Err(self.err(format!("expected '{tag}', found '{}'", self.toks[0])));
        }
        Ok(())
    }

    fn word(&mut self) -> Result<&'a str> {
        let t = *self.toks.get(self.pos).ok_or_else(|| self.err("line too short"))?;
        self.pos += 1;
        Ok(t)
    }

    fn u32(&mut self) -> Result<u32> {
        let t = self.word()?;
        t.parse().map_err(|_| self.err(format!("bad integer '{t}'")))
    }

    fn f64(&mut self) -> Result<f64> {
        let t = self.word()?;
        parse_f64(t, self.line)
    }

    fn cell(&mut self) -> Result<u32> {
        let t = self.word()?;
        if t == "-1" {
            return Ok(OUTER);
        }
        t.parse().map_err(|_| self.err(format!("bad cell id '{t}'")))
    }

    fn list(&mut self) -> Result<Vec<u32>> {
        let n = self.u32()?;
        (0..n).map(|_| self.u32()).collect()
    }

    fn count(&mut self, tag: &str) -> Result<usize> {
        self.record(tag)?;
        Ok(self.u32()? as usize)
    }

    fn done(&self) -> Result<()> {
        if self.pos != self.toks.len() {
            return Err(self.err("trailing tokens"));
        }
        Ok(())
    }
}

/// Parses a PVOL file. Index ranges and implicit-point existence are
/// checked; use [`BspComplex::validate`] for the full structural check.
pub fn read_pvol(text: &str) -> Result<(BspComplex, Option<Vec<bool>>)> {
    let mut r = Reader::new(text);
    r.record("PVOL")?;
    if r.word()? != "1" {
        return Err(r.err("unsupported PVOL version"));
    }
    let np = r.count("points")?;
    let mut points = Vec::with_capacity(np);
    for _ in 0..np {
        r.record("p")?;
        points.push([r.f64()?, r.f64()?, r.f64()?]);
        r.done()?;
    }
    let pt = |r: &Reader, i: u32| -> Result<Point3> {
        points.get(i as usize).copied().ok_or_else(|| r.err(format!("point {i} out of range")))
    };
    let nk = r.count("constraints")?;
    let mut constraints = Vec::with_capacity(nk);
    for _ in 0..nk {
        r.record("k")?;
        let v = [r.u32()?, r.u32()?, r.u32()?];
        for &i in &v {
            pt(&r, i)?;
        }
        let origin = match r.word()? {
            "A" => Origin::A,
            "B" => Origin::B,
            "V" => Origin::Virtual,
            o => return Err(r.err(format!("bad origin '{o}'"))),
        };
        r.done()?;
        constraints.push(Constraint { v, origin });
    }
    let nv = r.count("vertices")?;
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        r.record("v")?;
        let v = match r.word()? {
            "e" => {
                let i = r.u32()?;
                BspVertex {
                    point: GenericPoint::Explicit(pt(&r, i)?),
                    def: VertexDef::Explicit(i),
                }
            }
            "l" => {
                let ids: Vec<u32> = (0..5).map(|_| r.u32()).collect::<Result<_>>()?;
                let p: Vec<Point3> = ids.iter().map(|&i| pt(&r, i)).collect::<Result<_>>()?;
                BspVertex {
                    point: GenericPoint::lpi(p[0], p[1], p[2], p[3], p[4]),
                    def: VertexDef::Lpi {
                        line: [ids[0], ids[1]],
                        plane: [ids[2], ids[3], ids[4]],
                    },
                }
            }
            "t" => {
                let ids: Vec<u32> = (0..9).map(|_| r.u32()).collect::<Result<_>>()?;
                let p: Vec<Point3> = ids.iter().map(|&i| pt(&r, i)).collect::<Result<_>>()?;
                BspVertex {
                    point: GenericPoint::tpi([p[0], p[1], p[2]], [p[3], p[4], p[5]], [p[6], p[7], p[8]]),
                    def: VertexDef::Tpi([[ids[0], ids[1], ids[2]], [ids[3], ids[4], ids[5]], [ids[6], ids[7], ids[8]]]),
                }
            }
            k => return Err(r.err(format!("bad vertex kind '{k}'"))),
        };
        if !v.point.is_well_defined() {
            return Err(r.err("implicit vertex is not well defined"));
        }
        r.done()?;
        vertices.push(v);
    }
    let ne = r.count("edges")?;
    let mut edges = Vec::with_capacity(ne);
    for _ in 0..ne {
        r.record("e")?;
        let v = [r.u32()?, r.u32()?];
        let line = match r.word()? {
            "p" => LineDef::Points([r.u32()?, r.u32()?]),
            "q" => LineDef::Planes([[r.u32()?, r.u32()?, r.u32()?], [r.u32()?, r.u32()?, r.u32()?]]),
            k => return Err(r.err(format!("bad line kind '{k}'"))),
        };
        let facets = r.list()?;
        r.done()?;
        edges.push(BspEdge { v, line, facets });
    }
    let nf = r.count("facets")?;
    let mut facets = Vec::with_capacity(nf);
    for _ in 0..nf {
        r.record("f")?;
        let cells = [r.cell()?, r.cell()?];
        let color = match r.word()? {
            "W" => Color::White,
            "G" => Color::Grey,
            "B" => Color::Black,
            c => return Err(r.err(format!("bad color '{c}'"))),
        };
        let (black_a, black_b) = match r.word()? {
            "-" => (false, false),
            "A" => (true, false),
            "B" => (false, true),
            "AB" => (true, true),
            x => return Err(r.err(format!("bad flags '{x}'"))),
        };
        let plane = [r.u32()?, r.u32()?, r.u32()?];
        let verts = r.list()?;
        let fedges = r.list()?;
        let coplanar = r.list()?;
        r.done()?;
        facets.push(BspFacet {
            verts,
            edges: fedges,
            plane,
            cells,
            color,
            coplanar,
            black_a,
            black_b,
        });
    }
    let nc = r.count("cells")?;
    let mut cells = Vec::with_capacity(nc);
    let mut labels = Vec::with_capacity(nc);
    let mut labeled = true;
    for _ in 0..nc {
        r.record("c")?;
        match r.word()? {
            "IN" => labels.push(true),
            "OUT" => labels.push(false),
            "-" => labeled = false,
            l => return Err(r.err(format!("bad label '{l}'"))),
        }
        let facets = r.list()?;
        let pending = r.list()?;
        r.done()?;
        cells.push(BspCell { facets, pending });
    }
    r.record("end")?;
    let cx = BspComplex {
        points,
        constraints,
        vertices,
        edges,
        facets,
        cells,
        stats: SplitStats::default(),
    };
    check_ranges(&cx)?;
    Ok((cx, labeled.then_some(labels)))
}

fn check_ranges(cx: &BspComplex) -> Result<()> {
    let (np, nk, nv, ne, nf, nc) = (
        cx.points.len() as u32,
        cx.constraints.len() as u32,
        cx.vertices.len() as u32,
        cx.edges.len() as u32,
        cx.facets.len() as u32,
        cx.cells.len() as u32,
    );
    let bad = |what: &str| Err(Error::parse("pvol", format!("{what} index out of range")));
    for e in &cx.edges {
        let line_ok = match e.line {
            LineDef::Points(p) => p.iter().all(|&i| i < np),
            LineDef::Planes(p) => p.iter().flatten().all(|&i| i < np),
        };
        if e.v.iter().any(|&v| v >= nv) || !line_ok || e.facets.iter().any(|&f| f >= nf) {
            return bad("edge");
        }
    }
    for f in &cx.facets {
        if f.verts.iter().any(|&v| v >= nv)
            || f.edges.iter().any(|&e| e >= ne)
            || f.plane.iter().any(|&i| i >= np)
            || f.coplanar.iter().any(|&k| k >= nk)
            || f.cells.iter().any(|&c| c != OUTER && c >= nc)
        {
            return bad("facet");
        }
    }
    for c in &cx.cells {
        if c.facets.iter().any(|&f| f >= nf) || c.pending.iter().any(|&k| k >= nk) {
            return bad("cell");
        }
    }
    Ok(())
}
