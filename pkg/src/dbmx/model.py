"""Canonical in-memory representation of a digital-biomarker cohort.

A cohort is a list of videos. Each video carries string attributes (task
label, condition, ...), a map of derived scalar variables (one summary value
per video), and a map of raw series (frame-by-frame measurements). Missing
modalities are represented by *absent* map entries, never by sentinel
numbers: capture failures must stay visible downstream. Within a series,
missing frames are NaN internally and ``None``/empty-cell externally.

All types are immutable after construction; readers may share them freely
across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DuplicateVariableId,
    DuplicateVideoId,
    EmptySelection,
    InvariantViolation,
    KindMismatch,
    NonPositiveSamplingRate,
    UnknownVariableId,
    UnknownVideoId,
)

CATEGORIES = ("speech", "acoustics", "facial", "movement")
KINDS = ("raw", "derived")

# Trailing partial frames make series slightly longer than duration * rate.
DURATION_TOLERANCE = 1.05


@dataclass(frozen=True)
class VariableDescriptor:
    """Identity and typing of one biomarker variable."""

    id: str
    category: str
    kind: str
    label: str = ""
    units: str = ""

    def __post_init__(self):
        if not self.id:
            raise InvariantViolation("variable id must be non-empty")
        if self.category not in CATEGORIES:
            raise InvariantViolation(
                f"unknown category {self.category!r} for variable {self.id!r}"
            )
        if self.kind not in KINDS:
            raise InvariantViolation(
                f"unknown kind {self.kind!r} for variable {self.id!r}"
            )
        if not self.label:
            object.__setattr__(self, "label", self.id)


@dataclass(frozen=True, eq=False)
class RawSeries:
    """Frame-by-frame measurement sequence. NaN marks a missing frame."""

    variable_id: str
    sampling_rate_hz: float
    values: np.ndarray

    def __post_init__(self):
        if self.sampling_rate_hz <= 0 or not math.isfinite(self.sampling_rate_hz):
            raise NonPositiveSamplingRate(
                f"series {self.variable_id!r}: rate {self.sampling_rate_hz}"
            )
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.shape[0] < 1:
            raise InvariantViolation(
                f"series {self.variable_id!r} must be a non-empty 1-D sequence"
            )
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_samples(cls, variable_id, sampling_rate_hz, samples):
        """Build from a sequence of ``float | None`` samples."""
        values = np.array(
            [np.nan if s is None else float(s) for s in samples], dtype=np.float64
        )
        return cls(variable_id, float(sampling_rate_hz), values)

    def to_samples(self):
        """Back to ``float | None`` per frame."""
        return [None if math.isnan(v) else float(v) for v in self.values]

    @property
    def n_frames(self) -> int:
        return int(self.values.shape[0])

    @property
    def duration_s(self) -> float:
        return self.n_frames / self.sampling_rate_hz

    @property
    def present_mask(self) -> np.ndarray:
        return ~np.isnan(self.values)

    def __eq__(self, other):
        if not isinstance(other, RawSeries):
            return NotImplemented
        return (
            self.variable_id == other.variable_id
            and self.sampling_rate_hz == other.sampling_rate_hz
            and np.array_equal(self.values, other.values, equal_nan=True)
        )

    def __repr__(self):
        return (
            f"RawSeries({self.variable_id!r}, rate={self.sampling_rate_hz}, "
            f"n={self.n_frames})"
        )


@dataclass(frozen=True)
class VideoRecord:
    """One video: attributes, derived scalars, and raw series by variable id."""

    id: str
    duration_s: float
    attributes: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise InvariantViolation("video id must be non-empty")
        if self.duration_s <= 0 or not math.isfinite(self.duration_s):
            raise InvariantViolation(f"video {self.id!r}: non-positive duration")
        for vid, value in self.derived.items():
            if not math.isfinite(value):
                raise InvariantViolation(
                    f"video {self.id!r}: derived {vid!r} is not finite"
                )
        limit = self.duration_s * DURATION_TOLERANCE
        for series in self.raw.values():
            if series.duration_s > limit:
                raise InvariantViolation(
                    f"video {self.id!r}: series {series.variable_id!r} spans "
                    f"{series.duration_s:.3f}s, longer than duration "
                    f"{self.duration_s:.3f}s + 5% tolerance"
                )


class Cohort:
    """Immutable, validated collection of videos plus the variable registry."""

    def __init__(self, videos, registry):
        self.videos = tuple(videos)
        self.registry = tuple(registry)

        self._by_variable = {}
        for desc in self.registry:
            if desc.id in self._by_variable:
                raise DuplicateVariableId(desc.id)
            self._by_variable[desc.id] = desc

        self._by_video = {}
        for video in self.videos:
            if video.id in self._by_video:
                raise DuplicateVideoId(video.id)
            self._by_video[video.id] = video

        keys = set()
        for video in self.videos:
            keys.update(video.attributes.keys())
            for vid in video.derived:
                self._check_kind(video, vid, "derived")
            for vid, series in video.raw.items():
                self._check_kind(video, vid, "raw")
                if series.variable_id != vid:
                    raise InvariantViolation(
                        f"video {video.id!r}: raw map key {vid!r} does not match "
                        f"series variable {series.variable_id!r}"
                    )
        self.attribute_keys = tuple(sorted(keys))

    def _check_kind(self, video, variable_id, expected_kind):
        desc = self._by_variable.get(variable_id)
        if desc is None:
            raise UnknownVariableId(
                f"video {video.id!r} references unregistered variable {variable_id!r}"
            )
        if desc.kind != expected_kind:
            raise KindMismatch(
                f"video {video.id!r}: variable {variable_id!r} is {desc.kind}, "
                f"used as {expected_kind}"
            )

    def video(self, video_id) -> VideoRecord:
        try:
            return self._by_video[video_id]
        except KeyError:
            raise UnknownVideoId(video_id) from None

    def descriptor(self, variable_id) -> VariableDescriptor:
        try:
            return self._by_variable[variable_id]
        except KeyError:
            raise UnknownVariableId(variable_id) from None

    def has_video(self, video_id) -> bool:
        return video_id in self._by_video

    def __eq__(self, other):
        if not isinstance(other, Cohort):
            return NotImplemented
        return self.videos == other.videos and self.registry == other.registry

    def __repr__(self):
        return f"Cohort(videos={len(self.videos)}, registry={len(self.registry)})"


@dataclass(frozen=True)
class Exclusion:
    video_id: str
    reason: str


@dataclass(frozen=True, eq=False)
class DerivedMatrix:
    """Complete-case matrix of derived values: rows = videos, cols = variables.

    Videos lacking any selected variable are listed in ``excluded`` instead of
    receiving imputed cells.
    """

    variable_ids: tuple
    video_ids: tuple
    values: np.ndarray
    excluded: tuple

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (len(self.video_ids), len(self.variable_ids)):
            raise InvariantViolation(
                f"matrix shape {values.shape} does not match "
                f"{len(self.video_ids)} videos x {len(self.variable_ids)} variables"
            )
        if np.isnan(values).any():
            raise InvariantViolation("derived matrix must not contain missing cells")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n_rows(self) -> int:
        return len(self.video_ids)

    @property
    def n_cols(self) -> int:
        return len(self.variable_ids)


def derived_matrix(cohort: Cohort, selection) -> DerivedMatrix:
    """Assemble the complete-case matrix for ``selection`` over the cohort.

    Row order follows cohort order. A video missing any selected variable is
    excluded with reason ``missing:<variable_id>`` (first missing id in
    selection order).
    """
    selection = list(selection)
    if not selection:
        raise EmptySelection("variable selection must be non-empty")
    seen = set()
    for vid in selection:
        desc = cohort.descriptor(vid)
        if desc.kind != "derived":
            raise KindMismatch(f"variable {vid!r} is {desc.kind}, expected derived")
        if vid in seen:
            raise DuplicateVariableId(f"variable {vid!r} selected twice")
        seen.add(vid)

    rows = []
    video_ids = []
    excluded = []
    for video in cohort.videos:
        missing = next((v for v in selection if v not in video.derived), None)
        if missing is not None:
            excluded.append(Exclusion(video.id, f"missing:{missing}"))
            continue
        rows.append([video.derived[v] for v in selection])
        video_ids.append(video.id)

    values = np.array(rows, dtype=np.float64).reshape(len(video_ids), len(selection))
    return DerivedMatrix(
        variable_ids=tuple(selection),
        video_ids=tuple(video_ids),
        values=values,
        excluded=tuple(excluded),
    )


def get_series(cohort: Cohort, video_id, variable_id) -> RawSeries:
    """Return the stored raw series unmodified (missing samples included)."""
    video = cohort.video(video_id)
    desc = cohort.descriptor(variable_id)
    if desc.kind != "raw":
        raise KindMismatch(f"variable {variable_id!r} is {desc.kind}, expected raw")
    try:
        return video.raw[variable_id]
    except KeyError:
        raise UnknownVariableId(
            f"video {video_id!r} has no series for {variable_id!r}"
        ) from None
