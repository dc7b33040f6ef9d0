from glassbox.core.image import fill_segments, segment_grid, segment_unit_id
from glassbox.core.text import join_tokens, token_unit_id, tokenize
from glassbox.core.types import (
    ATTRIBUTION_METHODS,
    COLUMN_KINDS,
    UNIT_KINDS,
    Attribution,
    Cell,
    Column,
    FeatureSchema,
    HumanAnnotation,
    ImageSample,
    Prediction,
    Sample,
    SegmentMap,
    TabularSample,
    TextSample,
    argmax_class,
)

__all__ = [
    "ATTRIBUTION_METHODS",
    "COLUMN_KINDS",
    "UNIT_KINDS",
    "Attribution",
    "Cell",
    "Column",
    "FeatureSchema",
    "HumanAnnotation",
    "ImageSample",
    "Prediction",
    "Sample",
    "SegmentMap",
    "TabularSample",
    "TextSample",
    "argmax_class",
    "fill_segments",
    "join_tokens",
    "segment_grid",
    "segment_unit_id",
    "token_unit_id",
    "tokenize",
]
