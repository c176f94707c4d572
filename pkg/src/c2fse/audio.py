"""Waveform I/O, synthetic speech/noise generation, SNR mixing, and slicing.

Everything here is pure: synthesis is a deterministic function of its seed,
and no function mutates its inputs, so concurrent use on distinct buffers is
safe.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.io import wavfile

from .errors import DataError, ShapeError
from .validation import as_waveform, check_positive_int, stable_seed

log = logging.getLogger(__name__)

SAMPLE_RATE = 16000
NOISE_KINDS = ("white", "pink", "babble")

PCM16_SCALE = 32768  # integer PCM value v maps to v / 32768


@dataclass(frozen=True)
class AudioBuffer:
    """Mono waveform with its sample rate."""

    samples: np.ndarray
    sample_rate: int = SAMPLE_RATE

    def __post_init__(self):
        object.__setattr__(self, "samples", as_waveform(self.samples))
        check_positive_int(self.sample_rate, "sample_rate")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate


@dataclass(frozen=True)
class NoisyPair:
    """A clean utterance and its noisy mixture at a known SNR."""

    clean: AudioBuffer
    noisy: AudioBuffer
    snr_db: float
    noise_kind: str = ""
    seed: int = 0

    def __post_init__(self):
        if len(self.clean) != len(self.noisy):
            raise ShapeError("clean and noisy have different lengths")
        if self.clean.sample_rate != self.noisy.sample_rate:
            raise DataError("clean and noisy have different sample rates")


@dataclass(frozen=True)
class SliceSet:
    """Equal-length windows cut from one utterance.

    ``slices`` is a (count, slice_len) array; ``pad_tail`` counts the zeros
    appended to the final window so inference can trim them again.
    """

    slices: np.ndarray
    slice_len: int
    stride: int
    pad_tail: int
    source_len: int = field(default=0)

    def reconstruct(self) -> np.ndarray:
        """Undo non-overlapped slicing: concatenate and trim the tail pad."""
        if self.stride != self.slice_len:
            raise ValueError("reconstruct only defined for non-overlapped slices")
        flat = self.slices.reshape(-1)
        return flat[: flat.size - self.pad_tail].copy()


def read_wav(path) -> AudioBuffer:
    """Read a mono 16 kHz WAV file (16-bit PCM, or 32/64-bit IEEE float).

    Integer samples are scaled by 1/32768; float samples pass through
    unchanged. Anything else (stereo, other encodings, other rates) is
    rejected rather than silently converted.
    """
    rate, data = wavfile.read(path)
    if data.ndim != 1:
        raise DataError(f"unsupported channel count {data.shape[1]} in {path}")
    if data.dtype == np.int16:
        samples = data.astype(np.float64) / PCM16_SCALE
    elif data.dtype in (np.float32, np.float64):
        samples = data.astype(np.float64)
    else:
        raise DataError(f"unsupported WAV encoding {data.dtype} in {path}")
    if rate != SAMPLE_RATE:
        raise DataError(f"sample rate {rate} != {SAMPLE_RATE} in {path} (no resampling)")
    return AudioBuffer(samples, rate)


def write_wav(path, buffer: AudioBuffer, encoding: str = "pcm16") -> None:
    """Write a mono WAV file.

    ``pcm16`` quantizes to 16-bit integers; samples outside [-1, 1] are
    clipped and the clip count is reported through the module logger.
    ``float32``/``float64`` store IEEE floats (float64 is lossless, used for
    synthetic datasets whose SNR labels must survive a disk round trip).
    """
    samples = buffer.samples
    if encoding == "pcm16":
        n_clipped = int(np.count_nonzero((samples < -1.0) | (samples > 1.0)))
        if n_clipped:
            log.warning("write_wav %s: clipped %d samples outside [-1, 1]", path, n_clipped)
        q = np.clip(np.rint(samples * PCM16_SCALE), -32768, 32767).astype("<i2")
        wavfile.write(path, buffer.sample_rate, q)
    elif encoding == "float32":
        wavfile.write(path, buffer.sample_rate, samples.astype("<f4"))
    elif encoding == "float64":
        wavfile.write(path, buffer.sample_rate, samples.astype("<f8"))
    else:
        raise ValueError(f"unknown encoding {encoding!r}")


@dataclass(frozen=True)
class HarmonicProfile:
    """Parameters of the synthetic harmonic voice generator."""

    f0_min_hz: float = 80.0
    f0_max_hz: float = 300.0
    harmonics_min: int = 3
    harmonics_max: int = 8
    segment_s_min: float = 0.08
    segment_s_max: float = 0.35
    silence_s_max: float = 0.08
    peak: float = 0.9


def synth_clean(duration_s: float, profile: HarmonicProfile | None = None,
                seed: int = 0, sample_rate: int = SAMPLE_RATE) -> AudioBuffer:
    """Synthesize a clean voice-like signal: harmonic segments with envelopes
    and short silences. Bit-identical for identical (profile, seed)."""
    if duration_s <= 0:
        raise ValueError("duration_s must be positive")
    profile = profile or HarmonicProfile()
    n = int(round(duration_s * sample_rate))
    rng = np.random.default_rng(stable_seed("synth_clean", seed))
    x = np.zeros(n)
    pos = 0
    first = True
    while pos < n:
        if not first:
            pos += int(rng.uniform(0.0, profile.silence_s_max) * sample_rate)
            if pos >= n:
                break
        first = False
        seg = int(rng.uniform(profile.segment_s_min, profile.segment_s_max) * sample_rate)
        seg = min(max(seg, 16), n - pos)
        f0 = rng.uniform(profile.f0_min_hz, profile.f0_max_hz)
        n_harm = int(rng.integers(profile.harmonics_min, profile.harmonics_max + 1))
        t = np.arange(seg) / sample_rate
        voiced = np.zeros(seg)
        for h in range(1, n_harm + 1):
            f_h = f0 * h
            if f_h >= 0.45 * sample_rate:
                break
            amp = rng.uniform(0.5, 1.0) / h
            phase = rng.uniform(0.0, 2.0 * np.pi)
            voiced += amp * np.sin(2.0 * np.pi * f_h * t + phase)
        x[pos:pos + seg] += np.hanning(seg) * voiced
        pos += seg
    level = profile.peak * rng.uniform(0.5, 1.0)
    peak = np.max(np.abs(x))
    if peak == 0.0:  # degenerate only for sub-millisecond durations
        x = np.sin(2.0 * np.pi * 220.0 * np.arange(n) / sample_rate)
        peak = np.max(np.abs(x))
    x *= level / peak
    return AudioBuffer(x, sample_rate)


def synth_noise(kind: str, length: int, seed: int = 0,
                sample_rate: int = SAMPLE_RATE) -> AudioBuffer:
    """Synthesize unit-RMS noise of the given kind, deterministic per seed."""
    check_positive_int(length, "length")
    if kind not in NOISE_KINDS:
        raise ValueError(f"unknown noise kind {kind!r}, expected one of {NOISE_KINDS}")
    rng = np.random.default_rng(stable_seed("synth_noise", kind, seed))
    if kind == "white":
        x = rng.standard_normal(length)
    elif kind == "pink":
        white = rng.standard_normal(length)
        spectrum = np.fft.rfft(white)
        freqs = np.fft.rfftfreq(length, 1.0 / sample_rate)
        if length >= 2:
            floor = freqs[1]
            spectrum /= np.sqrt(np.maximum(freqs, floor))
        x = np.fft.irfft(spectrum, length)
    else:  # babble: several overlapping synthetic voices
        duration_s = length / sample_rate
        x = np.zeros(length)
        for v in range(6):
            voice = synth_clean(max(duration_s, 1e-3), seed=stable_seed("babble", seed, v),
                                sample_rate=sample_rate)
            x += voice.samples[:length]
    rms = np.sqrt(np.mean(x * x))
    if rms == 0.0:
        x = rng.standard_normal(length)
        rms = np.sqrt(np.mean(x * x))
    return AudioBuffer(x / rms, sample_rate)


def mix_at_snr(clean: AudioBuffer, noise: AudioBuffer, snr_db: float,
               noise_kind: str = "", seed: int = 0) -> NoisyPair:
    """Scale the noise so the clean-to-noise power ratio is exactly snr_db
    and return the pair (noisy = clean + alpha * noise)."""
    if len(clean) != len(noise):
        raise ShapeError(f"length mismatch: clean {len(clean)} vs noise {len(noise)}")
    if clean.sample_rate != noise.sample_rate:
        raise DataError("sample rate mismatch between clean and noise")
    p_clean = float(np.mean(clean.samples ** 2))
    p_noise = float(np.mean(noise.samples ** 2))
    if p_clean == 0.0:
        raise DataError("clean signal has zero power")
    if p_noise == 0.0:
        raise DataError("noise signal has zero power")
    alpha = np.sqrt(p_clean / (p_noise * 10.0 ** (snr_db / 10.0)))
    noisy = clean.samples + alpha * noise.samples
    return NoisyPair(clean=clean, noisy=AudioBuffer(noisy, clean.sample_rate),
                     snr_db=float(snr_db), noise_kind=noise_kind, seed=seed)


def slice_utterance(buffer: AudioBuffer, slice_len: int, stride: int | None = None,
                    mode: str = "non_overlapped") -> SliceSet:
    """Cut an utterance into fixed-length windows.

    Overlapped mode emits windows at offsets 0, stride, 2*stride, ... while
    the offset lies inside the signal; the final window is zero-padded.
    Non-overlapped mode is the stride == slice_len case and supports exact
    reconstruction.
    """
    check_positive_int(slice_len, "slice_len")
    x = buffer.samples
    if mode == "non_overlapped":
        if stride not in (None, slice_len):
            raise ValueError("non_overlapped mode requires stride == slice_len")
        stride = slice_len
    elif mode == "overlapped":
        if stride is None:
            raise ValueError("overlapped mode requires a stride")
        check_positive_int(stride, "stride")
        if stride > slice_len:
            raise ValueError(f"overlapped mode requires stride <= slice_len "
                             f"({stride} > {slice_len})")
    else:
        raise ValueError(f"unknown slicing mode {mode!r}")

    offsets = list(range(0, len(x), stride))
    out = np.zeros((len(offsets), slice_len))
    for i, off in enumerate(offsets):
        chunk = x[off:off + slice_len]
        out[i, :len(chunk)] = chunk
    pad_tail = max(0, offsets[-1] + slice_len - len(x))
    return SliceSet(slices=out, slice_len=slice_len, stride=stride,
                    pad_tail=pad_tail, source_len=len(x))
