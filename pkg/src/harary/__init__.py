"""Harary and consecutive circulant graphs: closeness, residual closeness, and formula verification."""

from .distances import GraphStats, bfs_distances, bfs_excluding, graph_stats, level_census, removal_census
from .formulas import (
    Coverage,
    DiameterRule,
    FormulaResult,
    FormulaTrace,
    VertexClass,
    circulant_closeness_formula,
    class_reconstruction,
    classify_vertex,
    closeness_formula,
    diameter_formula,
    residual_formula,
    tail_sum,
    vertex_closeness_formula_odd_odd,
)
from .graphs import (
    Graph,
    HararyParams,
    ParameterError,
    ParityCase,
    build_circulant,
    build_harary,
    complete_graph,
    export_graph,
    parse_edgelist,
)
from .oracle import ClosenessReport, ResidualReport, closeness_after_removal, graph_closeness, residual_closeness
from .verify import SweepConfig, SweepReport, emit_report, sweep, verify_cell

__all__ = [name for name in dir() if not name.startswith("_")]
