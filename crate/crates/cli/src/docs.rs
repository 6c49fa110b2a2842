//! JSON document formats and the vertex name tables that tie string names
//! in files to the numeric vertex ids the library uses.
//!
//! Canonical form: vertex names sorted, simplices sorted lexicographically,
//! maps keyed by sorted names. Parsing assigns ids in sorted name order, so
//! serialize-parse-serialize is byte identical.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use lcdkit::branched::{BranchedManifold, Immersion, LocalProjection};
use lcdkit::bundles::{Letter, Matrix2, Word};
use lcdkit::model::{LocalModel, ModelSet};
use lcdkit::{Label, Labeling, Simplex, SimplicialComplex, SimplicialMap, VertexId};

pub const FORMAT_VERSION: u32 = 1;

/// A parse/validation failure with enough context to locate it.
#[derive(Debug)]
pub struct DocError(pub String);

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for DocError {}

impl From<lcdkit::Error> for DocError {
    fn from(e: lcdkit::Error) -> Self {
        DocError(e.to_string())
    }
}

type DocResult<T> = Result<T, DocError>;

/// Top-level document wrapper.
#[derive(Serialize, Deserialize, Debug)]
pub struct Document {
    pub format_version: u32,
    #[serde(flatten)]
    pub body: DocBody,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum DocBody {
    Complex(ComplexDoc),
    Labeling(LabelingDoc),
    Model(ModelDoc),
    ModelSet(ModelSetDoc),
    Branched(BranchedDoc),
    Immersion(ImmersionDoc),
    Build(BuildDoc),
    Word(WordDoc),
}

impl Document {
    pub fn new(body: DocBody) -> Self {
        Document {
            format_version: FORMAT_VERSION,
            body,
        }
    }

    pub fn kind(&self) -> &'static str {
        match &self.body {
            DocBody::Complex(_) => "complex",
            DocBody::Labeling(_) => "labeling",
            DocBody::Model(_) => "model",
            DocBody::ModelSet(_) => "model-set",
            DocBody::Branched(_) => "branched",
            DocBody::Immersion(_) => "immersion",
            DocBody::Build(_) => "build",
            DocBody::Word(_) => "word",
        }
    }

    pub fn parse(text: &str) -> DocResult<Document> {
        let doc: Document = serde_json::from_str(text).map_err(|e| {
            DocError(format!(
                "parse error at line {} column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        if doc.format_version != FORMAT_VERSION {
            return Err(DocError(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                doc.format_version
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ComplexDoc {
    pub dim: Option<i64>,
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, Default)]
pub struct LabelingDoc {
    pub vertex_labels: BTreeMap<String, String>,
    pub simplex_labels: Vec<SimplexLabelDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SimplexLabelDoc {
    pub simplex: Vec<String>,
    pub label: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ModelDoc {
    pub complex: ComplexDoc,
    pub center: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labeling: Option<LabelingDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ModelSetDoc {
    pub models: Vec<ModelDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ProjectionDoc {
    pub domain_maximal: Vec<Vec<String>>,
    pub chart: ComplexDoc,
    pub vertex_map: BTreeMap<String, String>,
    pub sheets: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BranchedDoc {
    pub complex: ComplexDoc,
    pub projections: Vec<ProjectionDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ImmersionDoc {
    pub vertex_map: BTreeMap<String, String>,
    pub witnesses: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BuildDoc {
    pub models: ModelSetDoc,
    pub d: usize,
    pub witnesses: Vec<ComplexDoc>,
    pub branched: BranchedDoc,
    pub geography_count: usize,
    pub theta: Vec<ImmersionDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct WordDoc {
    pub letters: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatrixDoc {
    pub rows: [[i64; 2]; 2],
}

impl MatrixDoc {
    pub fn of(m: &Matrix2) -> Self {
        MatrixDoc { rows: m.rows }
    }
}

/// Bidirectional map between vertex names and ids.
#[derive(Clone, Debug, Default)]
pub struct NameTable {
    names: BTreeMap<VertexId, String>,
    ids: BTreeMap<String, VertexId>,
}

impl NameTable {
    /// Builds a table from sorted names, ids in name order.
    pub fn from_names(names: impl IntoIterator<Item = String>) -> NameTable {
        let sorted: BTreeSet<String> = names.into_iter().collect();
        let mut table = NameTable::default();
        for (i, name) in sorted.into_iter().enumerate() {
            let id = VertexId(i as u32);
            table.ids.insert(name.clone(), id);
            table.names.insert(id, name);
        }
        table
    }

    /// Synthetic names `v{id}` for a complex that was born numeric.
    pub fn synthetic(k: &SimplicialComplex) -> NameTable {
        let mut table = NameTable::default();
        for v in k.vertices() {
            let name = format!("v{}", v.0);
            table.ids.insert(name.clone(), v);
            table.names.insert(v, name);
        }
        table
    }

    pub fn id(&self, name: &str) -> DocResult<VertexId> {
        self.ids
            .get(name)
            .copied()
            .ok_or_else(|| DocError(format!("unknown vertex name {name:?}")))
    }

    pub fn name(&self, v: VertexId) -> DocResult<&str> {
        self.names
            .get(&v)
            .map(|s| s.as_str())
            .ok_or_else(|| DocError(format!("vertex {v} has no name")))
    }

    /// Adds deterministic fresh names for any vertex of `k` the table does
    /// not know yet.
    pub fn extend_for(&mut self, k: &SimplicialComplex) {
        for v in k.vertices() {
            if self.names.contains_key(&v) {
                continue;
            }
            let mut candidate = format!("n{}", v.0);
            let mut salt = 0usize;
            while self.ids.contains_key(&candidate) {
                salt += 1;
                candidate = format!("n{}_{salt}", v.0);
            }
            self.ids.insert(candidate.clone(), v);
            self.names.insert(v, candidate);
        }
    }

    fn simplex(&self, names: &[String]) -> DocResult<Simplex> {
        if names.is_empty() {
            return Err(DocError("empty simplex in document".into()));
        }
        let ids: DocResult<Vec<VertexId>> = names.iter().map(|n| self.id(n)).collect();
        let ids = ids?;
        let distinct: BTreeSet<VertexId> = ids.iter().copied().collect();
        if distinct.len() != ids.len() {
            return Err(DocError(format!("simplex {names:?} repeats a vertex")));
        }
        Ok(Simplex::new(ids))
    }

    fn simplex_names(&self, s: &Simplex) -> DocResult<Vec<String>> {
        s.vertices()
            .iter()
            .map(|v| self.name(*v).map(str::to_owned))
            .collect()
    }
}

pub fn parse_complex(doc: &ComplexDoc) -> DocResult<(SimplicialComplex, NameTable)> {
    let mut names: Vec<String> = doc.vertices.clone();
    for s in &doc.maximal_simplices {
        names.extend(s.iter().cloned());
    }
    let table = NameTable::from_names(names);
    let simplices: DocResult<Vec<Simplex>> = doc
        .maximal_simplices
        .iter()
        .map(|s| table.simplex(s))
        .collect();
    let mut all = simplices?;
    for v in &doc.vertices {
        all.push(Simplex::vertex(table.id(v)?));
    }
    let complex = SimplicialComplex::from_maximal(all);
    if let Some(d) = doc.dim {
        let actual = complex.dim().map(|x| x as i64);
        if actual != Some(d) {
            return Err(DocError(format!(
                "declared dim {d} but the complex has dim {actual:?}"
            )));
        }
    } else if !complex.is_empty() {
        return Err(DocError("nonempty complex must declare its dim".into()));
    }
    Ok((complex, table))
}

pub fn complex_to_doc(k: &SimplicialComplex, table: &NameTable) -> DocResult<ComplexDoc> {
    let mut vertices: Vec<String> = k
        .vertices()
        .map(|v| table.name(v).map(str::to_owned))
        .collect::<DocResult<_>>()?;
    vertices.sort();
    let mut maximal: Vec<Vec<String>> = k
        .maximal_simplices()
        .into_iter()
        .map(|s| {
            let mut names = table.simplex_names(s)?;
            names.sort();
            Ok(names)
        })
        .collect::<DocResult<_>>()?;
    maximal.sort();
    Ok(ComplexDoc {
        dim: k.dim().map(|d| d as i64),
        vertices,
        maximal_simplices: maximal,
    })
}

pub fn parse_labeling(doc: &LabelingDoc, table: &NameTable) -> DocResult<Labeling> {
    let mut labeling = Labeling::new();
    for (name, label) in &doc.vertex_labels {
        labeling.set_vertex_label(table.id(name)?, Label::from(label.clone()));
    }
    for entry in &doc.simplex_labels {
        labeling.set_simplex_label(
            table.simplex(&entry.simplex)?,
            Label::from(entry.label.clone()),
        );
    }
    Ok(labeling)
}

pub fn labeling_to_doc(l: &Labeling, table: &NameTable) -> DocResult<LabelingDoc> {
    let mut vertex_labels = BTreeMap::new();
    for (v, label) in l.vertex_labels() {
        vertex_labels.insert(table.name(*v)?.to_owned(), label.to_string());
    }
    let mut simplex_labels: Vec<SimplexLabelDoc> = l
        .simplex_labels()
        .iter()
        .map(|(s, label)| {
            let mut names = table.simplex_names(s)?;
            names.sort();
            Ok(SimplexLabelDoc {
                simplex: names,
                label: label.to_string(),
            })
        })
        .collect::<DocResult<_>>()?;
    simplex_labels.sort_by(|a, b| a.simplex.cmp(&b.simplex));
    Ok(LabelingDoc {
        vertex_labels,
        simplex_labels,
    })
}

pub fn parse_model(doc: &ModelDoc) -> DocResult<(LocalModel, NameTable)> {
    let (complex, table) = parse_complex(&doc.complex)?;
    let center = table.id(&doc.center)?;
    let labeling = doc
        .labeling
        .as_ref()
        .map(|l| parse_labeling(l, &table))
        .transpose()?;
    Ok((LocalModel::new(complex, center, labeling)?, table))
}

pub fn model_to_doc(m: &LocalModel, table: &NameTable) -> DocResult<ModelDoc> {
    Ok(ModelDoc {
        complex: complex_to_doc(m.complex(), table)?,
        center: table.name(m.center())?.to_owned(),
        labeling: m
            .labeling()
            .map(|l| labeling_to_doc(l, table))
            .transpose()?,
    })
}

pub fn parse_model_set(doc: &ModelSetDoc) -> DocResult<ModelSet> {
    let models: DocResult<Vec<LocalModel>> =
        doc.models.iter().map(|m| Ok(parse_model(m)?.0)).collect();
    Ok(ModelSet::new(models?)?)
}

pub fn model_set_to_doc(models: &ModelSet) -> DocResult<ModelSetDoc> {
    let docs: DocResult<Vec<ModelDoc>> = models
        .models()
        .iter()
        .map(|m| {
            let table = NameTable::synthetic(m.complex());
            model_to_doc(m, &table)
        })
        .collect();
    Ok(ModelSetDoc { models: docs? })
}

pub fn parse_branched(doc: &BranchedDoc) -> DocResult<(BranchedManifold, NameTable)> {
    let (complex, table) = parse_complex(&doc.complex)?;
    let mut projections = Vec::new();
    for (i, p) in doc.projections.iter().enumerate() {
        let context = |msg: String| DocError(format!("projection {i}: {msg}"));
        let domain_simplices: DocResult<Vec<Simplex>> =
            p.domain_maximal.iter().map(|s| table.simplex(s)).collect();
        let domain = SimplicialComplex::from_maximal(domain_simplices?);
        if !domain.is_subcomplex_of(&complex) {
            return Err(context("domain is not a subcomplex".into()));
        }
        let (chart, chart_table) = parse_complex(&p.chart)?;
        let mut vertex_map = BTreeMap::new();
        for (from, to) in &p.vertex_map {
            vertex_map.insert(table.id(from)?, chart_table.id(to)?);
        }
        let map = SimplicialMap::new(domain.clone(), chart.clone(), vertex_map)
            .map_err(|e| context(e.to_string()))?;
        let mut sheets = Vec::new();
        for sheet in &p.sheets {
            let simplices: DocResult<Vec<Simplex>> =
                sheet.iter().map(|s| table.simplex(s)).collect();
            sheets.push(SimplicialComplex::from_maximal(simplices?));
        }
        projections.push(
            LocalProjection::new(domain, chart, map, sheets).map_err(|e| context(e.to_string()))?,
        );
    }
    Ok((BranchedManifold::new(complex, projections), table))
}

pub fn branched_to_doc(w: &BranchedManifold, table: &NameTable) -> DocResult<BranchedDoc> {
    let mut projections = Vec::new();
    for p in w.projections() {
        let chart_table = NameTable::synthetic(p.chart());
        let mut domain_maximal: Vec<Vec<String>> = p
            .domain()
            .maximal_simplices()
            .into_iter()
            .map(|s| {
                let mut names = table.simplex_names(s)?;
                names.sort();
                Ok(names)
            })
            .collect::<DocResult<_>>()?;
        domain_maximal.sort();
        let mut vertex_map = BTreeMap::new();
        for (from, to) in p.map().vertex_map() {
            vertex_map.insert(
                table.name(*from)?.to_owned(),
                chart_table.name(*to)?.to_owned(),
            );
        }
        let mut sheets: Vec<Vec<Vec<String>>> = Vec::new();
        for sheet in p.sheets() {
            let mut maximal: Vec<Vec<String>> = sheet
                .maximal_simplices()
                .into_iter()
                .map(|s| {
                    let mut names = table.simplex_names(s)?;
                    names.sort();
                    Ok(names)
                })
                .collect::<DocResult<_>>()?;
            maximal.sort();
            sheets.push(maximal);
        }
        sheets.sort();
        projections.push(ProjectionDoc {
            domain_maximal,
            chart: complex_to_doc(p.chart(), &chart_table)?,
            vertex_map,
            sheets,
        });
    }
    Ok(BranchedDoc {
        complex: complex_to_doc(w.complex(), table)?,
        projections,
    })
}

pub fn immersion_to_doc(
    imm: &Immersion,
    source: &NameTable,
    target: &NameTable,
) -> DocResult<ImmersionDoc> {
    let mut vertex_map = BTreeMap::new();
    for (from, to) in imm.map().vertex_map() {
        vertex_map.insert(source.name(*from)?.to_owned(), target.name(*to)?.to_owned());
    }
    let mut witnesses = BTreeMap::new();
    for (v, i) in imm.witnesses() {
        witnesses.insert(source.name(*v)?.to_owned(), *i);
    }
    Ok(ImmersionDoc {
        vertex_map,
        witnesses,
    })
}

pub fn word_to_doc(word: &Word) -> WordDoc {
    WordDoc {
        letters: word.letters().iter().map(|l| l.to_string()).collect(),
    }
}

pub fn parse_word(doc: &WordDoc) -> DocResult<Word> {
    let tokens: Vec<&str> = doc.letters.iter().map(|s| s.as_str()).collect();
    Word::parse(&tokens).map_err(|e| DocError(e.to_string()))
}

pub fn parse_letters(tokens: &[String]) -> DocResult<Word> {
    let mut letters = Vec::with_capacity(tokens.len());
    for t in tokens {
        letters.push(Letter::parse(t).map_err(|e| DocError(e.to_string()))?);
    }
    Ok(Word(letters))
}
