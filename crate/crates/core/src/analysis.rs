//! One-stop analysis of a subgroup pair and the serializable reports built
//! from it.

use serde::{Deserialize, Serialize};

use crate::catalog::GroupSpec;
use crate::chartab::{CharacterTable, TableJson, TableStats};
use crate::depth::{minimal_depth, DepthReport};
use crate::error::Result;
use crate::frobenius::{
    bii_shortcuts, burnside_rank, induced_gram, is_rich, satisfies_bii, BiiShortcuts, BiiVerdict, FrobeniusMatrix,
    InducedGram, RichVerdict, SubgroupPair,
};
use crate::graph::{frobenius_graph, Diameter, FrobeniusGraph};
use crate::group::{PermGroup, Subgroup};
use crate::subgroups::ClassificationReport;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub subgroup_order: usize,
    pub index: usize,
    pub generators: Vec<String>,
    pub core_order: usize,
    pub matrix: FrobeniusMatrix,
    pub gram: InducedGram,
    pub diameter: Diameter,
    pub components: usize,
    /// `None` when the subgroup is the whole group.
    pub rich: Option<RichVerdict>,
    pub bii: BiiVerdict,
    pub diameter_three: bool,
    pub shortcuts: BiiShortcuts,
    pub burnside_rank: usize,
    pub depth: DepthReport,
}

/// Everything computed for one pair, keeping the graph for DOT output.
pub struct PairAnalysis {
    pub report: PairReport,
    pub graph: FrobeniusGraph,
}

pub fn analyze_pair(g: &PermGroup, tg: &CharacterTable, h: &Subgroup) -> Result<PairAnalysis> {
    let pair = SubgroupPair::new(g, tg, h.clone())?;
    let matrix = pair.frobenius_matrix()?;
    let gram = induced_gram(&matrix);
    let graph = frobenius_graph(&matrix);
    let proper = h.order() < g.order();
    let rich = if proper { Some(is_rich(g, tg, h)?) } else { None };
    let bii = satisfies_bii(&gram);
    let diameter_three = proper && !h.is_trivial() && rich.as_ref().is_some_and(|r| r.rich) && bii.holds;
    let report = PairReport {
        subgroup_order: h.order(),
        index: g.order() / h.order(),
        generators: h.generator_perms(g).iter().map(ToString::to_string).collect(),
        core_order: g.core(h).order(),
        diameter: graph.diameter,
        components: graph.components,
        rich,
        bii,
        diameter_three,
        shortcuts: bii_shortcuts(g, h),
        burnside_rank: burnside_rank(g, h),
        depth: minimal_depth(&matrix),
        matrix,
        gram,
    };
    Ok(PairAnalysis { report, graph })
}

impl PairReport {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "subgroup of order {} (index {}), generators {}\n",
            self.subgroup_order,
            self.index,
            if self.generators.is_empty() { "()".to_string() } else { self.generators.join(" ") }
        );
        out.push_str(&format!("core order {}\n", self.core_order));
        out.push_str("Frobenius matrix (rows Irr(H), columns Irr(G)):\n");
        out.push_str(&self.matrix.render_text());
        out.push_str(&format!(
            "graph: {} component(s), diameter {}\n",
            self.components, self.diameter
        ));
        match &self.rich {
            Some(r) => out.push_str(&format!(
                "rich: {}{}\n",
                r.rich,
                r.witness.map(|w| format!(" (character {} missing from 1_H^G)", w)).unwrap_or_default()
            )),
            None => out.push_str("rich: n/a (not a proper subgroup)\n"),
        }
        out.push_str(&format!(
            "induced characters pairwise non-orthogonal: {}{}\n",
            self.bii.holds,
            self.bii
                .witness
                .map(|(a, b)| format!(" (witness pair {}, {})", a, b))
                .unwrap_or_default()
        ));
        out.push_str(&format!("diameter three subgroup: {}\n", self.diameter_three));
        out.push_str(&format!(
            "sufficient conditions: trivial intersection {}, transitive normalizer {}\n",
            self.shortcuts.trivial_intersection, self.shortcuts.transitive_normalizer
        ));
        out.push_str(&format!("double cosets: {}\n", self.burnside_rank));
        out.push_str(&format!(
            "minimal depth {}{} (odd m = {}, even m = {}, support chain {:?})\n",
            self.depth.minimal_depth,
            if self.depth.degenerate { " [degenerate]" } else { "" },
            self.depth.odd_m,
            self.depth.even_m,
            self.depth.support_chain_lengths
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub spec: String,
    pub order: usize,
    pub degree: usize,
    pub classes: usize,
    pub stats: TableStats,
}

impl GroupSummary {
    pub fn new(spec: &GroupSpec, g: &PermGroup, tg: &CharacterTable) -> GroupSummary {
        GroupSummary {
            spec: spec.to_string(),
            order: g.order(),
            degree: g.degree(),
            classes: tg.len(),
            stats: tg.stats(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeOutput {
    pub schema: u32,
    pub group: GroupSummary,
    pub table: Option<TableJson>,
    pub subgroup_table: Option<TableJson>,
    pub pairs: Vec<PairReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOutput {
    pub schema: u32,
    pub group: GroupSummary,
    pub report: ClassificationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOutput {
    pub schema: u32,
    pub group: GroupSummary,
    pub table: TableJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogOutput {
    pub schema: u32,
    pub groups: Vec<crate::catalog::CatalogEntry>,
}
