"""Low-dimensional constructions: invariants, separation, B_q families, face attachment"""

from .faces import EdgeFace, faces_1d, triangle_areas, area_ratios, invariant_distinct, edge_census
from .separation import separation_witness
from .family import BqFamily, bq_family, face_line_clear, area_ratio, polygon_pair
from .attach import AttachmentResult, attach_face_3d, place_face, regular_face, facet_census

__all__ = [
    "EdgeFace",
    "faces_1d",
    "triangle_areas",
    "area_ratios",
    "invariant_distinct",
    "edge_census",
    "separation_witness",
    "BqFamily",
    "bq_family",
    "face_line_clear",
    "area_ratio",
    "polygon_pair",
    "AttachmentResult",
    "attach_face_3d",
    "place_face",
    "regular_face",
    "facet_census",
]
