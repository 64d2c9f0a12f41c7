"""Partitionability of simplicial complexes: exact search, shellings,
gluing and folding, and constructive schemes for classic 2-spaces."""

from .assembly import (
    CutResult,
    FoldingMap,
    Partitioned,
    cut,
    fold_scheme,
    glue,
    glue_shelling_like,
    make_folding_map,
    transfer_scheme,
)
from .complex import (
    EMPTY_FACE,
    VOID,
    Complex,
    RelComplex,
    boundary,
    closure,
    cone,
    deletion,
    euler_char,
    f_vector,
    faces,
    h_vector,
    intersection,
    is_subcomplex,
    link,
    minimal_representation,
    star,
    union,
)
from .constructors import (
    decompose_rp2,
    partition_annulus,
    partition_dunce_hat,
    partition_dunce_hat_rel_corner,
    partition_graph_rel_empty,
    partition_mobius_rel_boundary,
    partition_mobius_rel_empty,
    partition_rp2,
    shell_disk_relative,
)
from .corpus import barycentric_subdivision, corpus, dunce_grid, random_disk, random_graph, rp2_min
from .io import (
    Certificate,
    emit_hasse_dot,
    format_facet_file,
    parse_facet_file,
    read_certificate,
    verify_certificate,
    write_certificate,
)
from .partition import (
    Interval,
    PartitionScheme,
    SearchConfig,
    SearchResult,
    ShellingOrder,
    Verdict,
    decide_partitionable,
    find_shelling,
    interval_stats,
    scheme_from_shelling,
    verify_partitioning,
    verify_shelling,
)
from .surfaces import CornerData, SpaceClass, classify_surface, detect_corner, validate_dunce_hat

__version__ = "0.1.0"
