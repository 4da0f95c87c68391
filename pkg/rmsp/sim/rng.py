"""Per-frame random streams.

Every frame derives its generators from ``SeedSequence(seed, spawn_key=(point, frame))``,
so a frame decodes identically no matter which worker or batch it lands in.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class FrameStreams(NamedTuple):
    message: np.random.Generator
    noise: np.random.Generator
    decoder: np.random.Generator


def frame_streams(seed: int, point_index: int, frame_index: int) -> FrameStreams:
    root = np.random.SeedSequence(seed, spawn_key=(point_index, frame_index))
    message, noise, decoder = (np.random.default_rng(child) for child in root.spawn(3))
    return FrameStreams(message, noise, decoder)
