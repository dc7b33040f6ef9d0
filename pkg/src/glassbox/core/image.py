"""Grid segmentation: the deterministic interpretable units for images."""

from __future__ import annotations

import numpy as np

from glassbox.core.types import ImageSample, SegmentMap
from glassbox.errors import ValidationError


def segment_grid(image: ImageSample, rows: int, cols: int) -> SegmentMap:
    """Partition *image* into rows*cols rectangular cells.

    Boundaries fall at evenly divided pixel indices; remainder pixels are
    absorbed by the last row/column of cells. Segment id = cell_row*cols +
    cell_col.
    """
    if rows < 1 or cols < 1:
        raise ValidationError("rows and cols must be >= 1")
    if rows > image.height or cols > image.width:
        raise ValidationError(
            f"grid {rows}x{cols} exceeds image {image.height}x{image.width}"
        )
    cell_h = image.height // rows
    cell_w = image.width // cols
    row_idx = np.minimum(np.arange(image.height) // cell_h, rows - 1)
    col_idx = np.minimum(np.arange(image.width) // cell_w, cols - 1)
    assignment = row_idx[:, None] * cols + col_idx[None, :]
    return SegmentMap(rows=rows, cols=cols, assignment=assignment)


def segment_unit_id(segment_id: int) -> str:
    return str(segment_id)


def fill_segments(
    image: ImageSample,
    segmap: SegmentMap,
    off_segments: np.ndarray,
    fill_color: tuple[int, int, int],
) -> ImageSample:
    """Return a copy of *image* with every off segment painted *fill_color*.

    ``off_segments`` is a boolean vector over segment ids.
    """
    if segmap.assignment.shape != (image.height, image.width):
        raise ValidationError("segment map does not match image dimensions")
    px = np.array(image.pixels, dtype=np.uint8)
    off_mask = off_segments[segmap.assignment]
    px[off_mask] = np.asarray(fill_color, dtype=np.uint8)
    return ImageSample(height=image.height, width=image.width, pixels=px)
