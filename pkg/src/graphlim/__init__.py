"""Local statistics of bounded-degree graph sequences and a finite-depth
executable model of their limit: colored ball types, chain space with cylinder
measure, root-moving involutions, and machine-checked counting identities.
"""

from .canonical import (
    BallClass,
    ColoredType,
    TypedBall,
    ball_class,
    canonical_code,
    colored_type,
    restrict,
    sub_ball,
    underlying_class,
)
from .chains import (
    Chain,
    TypeTrie,
    apply_involution,
    build_trie,
    merge_tries,
    sample_chain,
    vertex_chain,
    verify_invariance,
)
from .coloring import ColoringBundle, build_bundle, distance_color, edge_color, typed_ball
from .errors import GraphLimError, ParseError, ValidationError, VerificationError
from .generators import cycle, path, random_regular, torus_grid
from .graphs import Graph, RootedBall, extract_ball, load_graph, power_graph
from .leafgraph import apply_word_in_ball, reconstruct_leafball, verify_reconstruction
from .stats import (
    SequenceReport,
    TypeDistribution,
    aggregate,
    analyze_sequence,
    distribution,
    tv_distance,
)

__version__ = "0.1.0"

__all__ = [
    "BallClass",
    "Chain",
    "ColoredType",
    "ColoringBundle",
    "Graph",
    "GraphLimError",
    "ParseError",
    "RootedBall",
    "SequenceReport",
    "TypeDistribution",
    "TypeTrie",
    "TypedBall",
    "ValidationError",
    "VerificationError",
    "aggregate",
    "analyze_sequence",
    "apply_involution",
    "apply_word_in_ball",
    "ball_class",
    "build_bundle",
    "build_trie",
    "canonical_code",
    "colored_type",
    "cycle",
    "distance_color",
    "distribution",
    "edge_color",
    "extract_ball",
    "load_graph",
    "merge_tries",
    "path",
    "power_graph",
    "random_regular",
    "reconstruct_leafball",
    "restrict",
    "sample_chain",
    "sub_ball",
    "torus_grid",
    "tv_distance",
    "typed_ball",
    "underlying_class",
    "verify_invariance",
    "verify_reconstruction",
    "vertex_chain",
]
