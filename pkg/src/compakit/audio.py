"""Audio clips, WAV file IO, and snippet slicing.

All composition runs on mono float arrays in [-1, 1] at one sample rate
(default 32 kHz). Files are RIFF WAV, PCM 16-bit or IEEE float-32; other
encodings raise DecodeError.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import floor
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
from scipy.io import wavfile

from .errors import DecodeError, RangeOutOfBoundsError, RateMismatchError

if TYPE_CHECKING:
    from .pool import SnippetRecord

DEFAULT_SAMPLE_RATE = 32_000


@dataclass
class AudioClip:
    """Mono PCM samples (float64) plus their sample rate."""

    samples: np.ndarray
    rate: int

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1:
            raise ValueError("AudioClip samples must be 1-D (mono)")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("AudioClip samples must be finite")
        if self.rate <= 0:
            raise ValueError("sample rate must be positive")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.rate


def read_wav(path: str | Path) -> tuple[np.ndarray, int]:
    """Raw samples scaled to [-1, 1] (shape (n,) or (n, channels)) and the rate."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rate, data = wavfile.read(str(path))
    except FileNotFoundError:
        raise
    except Exception as exc:
        raise DecodeError(f"cannot decode WAV {path}: {exc}") from exc
    if data.dtype == np.int16:
        out = data.astype(np.float64) / 32768.0
    elif data.dtype == np.float32:
        out = data.astype(np.float64)
    else:
        raise DecodeError(
            f"unsupported WAV encoding {data.dtype} in {path}; need PCM16 or float32"
        )
    return out, int(rate)


def write_wav(path: str | Path, clip: AudioClip) -> None:
    """Write a 32-bit float WAV, hard-clipping samples to [-1, 1]."""
    data = np.clip(clip.samples, -1.0, 1.0).astype(np.float32)
    wavfile.write(str(path), clip.rate, data)


def resample_linear(samples: np.ndarray, src_rate: int, dst_rate: int) -> np.ndarray:
    """Linear-interpolation resampler; length maps to round(n * dst / src)."""
    if src_rate == dst_rate:
        return samples
    n_out = int(round(len(samples) * dst_rate / src_rate))
    t_out = np.arange(n_out, dtype=np.float64) / dst_rate
    t_in = np.arange(len(samples), dtype=np.float64) / src_rate
    return np.interp(t_out, t_in, samples)


def slice_snippet(
    record: "SnippetRecord",
    target_rate: int = DEFAULT_SAMPLE_RATE,
    resample: bool = False,
    root: str | Path | None = None,
) -> AudioClip:
    """Cut the record's [start_s, end_s) span out of its source file as mono.

    Multichannel sources are averaged per sample. When the source rate
    differs from ``target_rate``, the slice is linearly resampled if
    ``resample`` is set, otherwise RateMismatchError is raised.
    """
    path = Path(record.source_path)
    if root is not None and not path.is_absolute():
        path = Path(root) / path
    data, rate = read_wav(path)
    if data.ndim == 2:
        data = data.mean(axis=1)
    i0 = floor(record.start_s * rate)
    i1 = floor(record.end_s * rate)
    if i0 < 0 or i1 > len(data) or i0 >= i1:
        raise RangeOutOfBoundsError(
            f"snippet {record.id}: [{record.start_s}, {record.end_s}]s is outside "
            f"the {len(data) / rate:.3f}s source {path}"
        )
    segment = data[i0:i1]
    if rate != target_rate:
        if not resample:
            raise RateMismatchError(
                f"snippet {record.id}: source rate {rate} != target {target_rate} "
                "and resampling is disabled"
            )
        segment = resample_linear(segment, rate, target_rate)
    return AudioClip(segment, target_rate)
