"""Waveform composition: crossfaded concatenation, gain-aware overlay, and
scene realization against a snippet pool.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from .audio import AudioClip, slice_snippet
from .errors import EmptyClipError, RateMismatchError, SilentClipError, UnknownLabelError
from .scene import Event, Node, Operator, SceneExpr, leaves

if TYPE_CHECKING:
    from .pool import Pool

DEFAULT_FADE_FRACTION = 0.10
DEFAULT_MIX_RATIO = 0.5
MIX_RATIO_RANGE = (0.3, 0.7)


def concat_crossfade(a: AudioClip, b: AudioClip, fade_fraction: float = DEFAULT_FADE_FRACTION) -> AudioClip:
    """Concatenate with an equal-power crossfade over a fraction of the shorter clip.

    Overlap length is round(fade_fraction * min(len a, len b)); the output has
    len(a) + len(b) - overlap samples. Inside the overlap the tail of ``a``
    fades out on a cosine while the head of ``b`` fades in on a sine, so the
    summed power envelope stays flat. fade_fraction=0 degrades to plain
    concatenation.
    """
    if a.rate != b.rate:
        raise RateMismatchError(f"cannot concatenate {a.rate} Hz with {b.rate} Hz")
    if len(a) == 0 or len(b) == 0:
        raise EmptyClipError("cannot concatenate an empty clip")
    if not 0.0 <= fade_fraction <= 1.0:
        raise ValueError("fade_fraction must be in [0, 1]")
    overlap = round(fade_fraction * min(len(a), len(b)))
    if overlap == 0:
        return AudioClip(np.concatenate([a.samples, b.samples]), a.rate)
    theta = (np.pi / 2) * (np.arange(overlap) + 0.5) / overlap
    faded = a.samples[len(a) - overlap:] * np.cos(theta) + b.samples[:overlap] * np.sin(theta)
    out = np.concatenate([a.samples[: len(a) - overlap], faded, b.samples[overlap:]])
    return AudioClip(out, a.rate)


def mix_coefficient(rms_a: float, rms_b: float, r: float) -> tuple[float, float]:
    """Weights (p, 1-p) balancing the two sources' sound pressure at ratio r.

    Equivalent to p = 1 / (1 + 10**((G_a - G_b)/20) * (1-r)/r) with
    G_x = 20*log10(RMS(x)), written so that swapping the sources together
    with r -> 1-r exchanges the weights exactly.
    """
    x = r / rms_a
    y = (1.0 - r) / rms_b
    return x / (x + y), y / (x + y)


def overlay_mix(a: AudioClip, b: AudioClip, r: float = DEFAULT_MIX_RATIO) -> AudioClip:
    """Overlay two clips, weighting by per-source sound pressure at ratio r.

    The shorter clip is zero-padded at the end. Weights follow the
    between-class mixing rule (see mix_coefficient); the weighted sum is
    divided by sqrt(p^2 + q^2) to roughly preserve energy, then hard-clipped
    to [-1, 1]. RMS is measured on the unpadded sources; an all-zero source
    has undefined sound pressure and raises SilentClipError.
    """
    if a.rate != b.rate:
        raise RateMismatchError(f"cannot overlay {a.rate} Hz with {b.rate} Hz")
    if not 0.0 < r < 1.0:
        raise ValueError("mix ratio r must be in (0, 1)")
    rms_a = float(np.sqrt(np.mean(np.square(a.samples)))) if len(a) else 0.0
    rms_b = float(np.sqrt(np.mean(np.square(b.samples)))) if len(b) else 0.0
    if rms_a == 0.0 or rms_b == 0.0:
        raise SilentClipError("cannot overlay a silent clip (RMS is zero)")
    n = max(len(a), len(b))
    pad_a = np.pad(a.samples, (0, n - len(a)))
    pad_b = np.pad(b.samples, (0, n - len(b)))
    p, q = mix_coefficient(rms_a, rms_b, r)
    mixed = (p * pad_a + q * pad_b) / np.sqrt(p * p + q * q)
    return AudioClip(np.clip(mixed, -1.0, 1.0), a.rate)


def realize_scene(
    expr: SceneExpr,
    pool: "Pool",
    rng_seed: int,
    sample_rate: int | None = None,
    fade_fraction: float = DEFAULT_FADE_FRACTION,
    mix_ratio: float = DEFAULT_MIX_RATIO,
    mix_ratio_mode: str = "fixed",
    resample: bool = False,
) -> tuple[AudioClip, dict[str, str]]:
    """Render a scene to audio; returns the clip and a label -> snippet-id map.

    Each distinct leaf label is resolved once to a pool snippet drawn
    uniformly by the seeded RNG, so the output is a pure function of
    (expression, pool contents, seed). Sequence nodes concatenate with a
    crossfade, overlay nodes mix; with mix_ratio_mode="uniform" the mix
    ratio is drawn per overlay node from (0.3, 0.7). The final waveform is
    hard-clipped to [-1, 1].
    """
    if sample_rate is None:
        sample_rate = pool.sample_rate_hint or 32_000
    rng = np.random.default_rng(rng_seed)

    chosen: dict[str, str] = {}
    clips: dict[str, AudioClip] = {}
    for leaf in leaves(expr):
        label = leaf.label
        if label in chosen:
            continue
        candidates = pool.by_label.get(label)
        if not candidates:
            raise UnknownLabelError(label)
        record = candidates[int(rng.integers(len(candidates)))]
        chosen[label] = record.id
        clips[label] = slice_snippet(record, sample_rate, resample=resample, root=pool.root)

    def evaluate(e: SceneExpr) -> AudioClip:
        if isinstance(e, Event):
            return clips[e.label]
        left = evaluate(e.left)
        right = evaluate(e.right)
        if e.op is Operator.SEQ:
            return concat_crossfade(left, right, fade_fraction)
        r = float(rng.uniform(*MIX_RATIO_RANGE)) if mix_ratio_mode == "uniform" else mix_ratio
        return overlay_mix(left, right, r)

    clip = evaluate(expr)
    return AudioClip(np.clip(clip.samples, -1.0, 1.0), clip.rate), chosen


def expected_length(expr: SceneExpr, leaf_lengths: dict[str, int], fade_fraction: float = DEFAULT_FADE_FRACTION) -> int:
    """Sample count realize_scene should produce, from per-label snippet lengths."""
    if isinstance(expr, Event):
        return leaf_lengths[expr.label]
    left = expected_length(expr.left, leaf_lengths, fade_fraction)
    right = expected_length(expr.right, leaf_lengths, fade_fraction)
    if isinstance(expr, Node) and expr.op is Operator.SEQ:
        return left + right - round(fade_fraction * min(left, right))
    return max(left, right)
