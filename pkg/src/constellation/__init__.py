"""Co-occurrence network engine for COCO-style object annotations.

Pipeline: parse annotation files, index images per category, weight every
category pair by the Jaccard index of their image sets, then explore the
resulting graph through threshold filtering, community detection and
spreading-activation ego trees — on the command line or over HTTP.
"""

from .cograph import (
    ConstellationGraph,
    Edge,
    GraphStats,
    ThresholdedGraph,
    build_graph,
    filter_graph,
    jaccard,
    read_graph,
    stats,
    write_graph,
)
from .community import CommunityAssignment, detect, modularity
from .ego import EgoMember, EgoParams, EgoTree, expand
from .ingest import (
    AnnotationDataset,
    Annotation,
    Category,
    CategoryImageIndex,
    IngestError,
    IntegrityError,
    MergeError,
    ParseError,
    build_index,
    load_annotations,
    merge_datasets,
    parse_annotations,
)

__all__ = [
    "Annotation",
    "AnnotationDataset",
    "Category",
    "CategoryImageIndex",
    "CommunityAssignment",
    "ConstellationGraph",
    "Edge",
    "EgoMember",
    "EgoParams",
    "EgoTree",
    "GraphStats",
    "IngestError",
    "IntegrityError",
    "MergeError",
    "ParseError",
    "ThresholdedGraph",
    "build_graph",
    "build_index",
    "detect",
    "expand",
    "filter_graph",
    "jaccard",
    "load_annotations",
    "merge_datasets",
    "modularity",
    "parse_annotations",
    "read_graph",
    "stats",
    "write_graph",
]

__version__ = "0.1.0"
