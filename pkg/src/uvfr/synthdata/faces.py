"""Parametric face video generator with analytic 68-point landmarks.

Faces are layered soft-edged ellipses (head, eyes, brows, nose, mouth)
driven by a 16-dim identity vector and a small motion model (translation,
in-plane rotation, mouth-openness oscillation).  Because every feature is
placed analytically, the 68-point landmark track comes for free and is an
exact function of the parameters.

Landmark layout follows the usual 68-point convention:
jaw 0-16, brows 17-26, nose 27-35, eyes 36-47, mouth 48-67.
All coordinates are (x, y) in normalized [0,1] image space, y down.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionError, PreconditionError

IDENTITY_DIM = 16


@dataclass(frozen=True)
class MotionParams:
    """Per-clip head/expression trajectory amplitudes.

    translation_amp: peak head translation, fraction of image size.
    rotation_amp: peak in-plane rotation, radians.
    expression_amp: mouth-openness oscillation amplitude in [0, 1].
    expression_freq: mouth oscillation frequency, cycles per frame.
    """

    translation_amp: float = 0.02
    rotation_amp: float = 0.08
    expression_amp: float = 0.6
    expression_freq: float = 0.12


@dataclass(frozen=True)
class FaceParams:
    """Everything needed to reproduce one face video bit-identically."""

    identity_vector: np.ndarray
    motion_params: MotionParams = field(default_factory=MotionParams)
    seed: int = 0

    def __post_init__(self):
        vec = np.asarray(self.identity_vector, dtype=np.float64)
        if vec.shape != (IDENTITY_DIM,):
            raise DimensionError(
                f"identity_vector must have shape ({IDENTITY_DIM},), got {vec.shape}"
            )
        if np.any(np.abs(vec) > 1.0):
            raise PreconditionError("identity_vector entries must lie in [-1, 1]")
        object.__setattr__(self, "identity_vector", vec)

    @classmethod
    def random(cls, seed: int) -> "FaceParams":
        """Draw identity and motion from a seed; deterministic."""
        rng = np.random.default_rng(seed)
        identity = rng.uniform(-1.0, 1.0, IDENTITY_DIM)
        motion = MotionParams(
            translation_amp=float(rng.uniform(0.005, 0.03)),
            rotation_amp=float(rng.uniform(0.02, 0.14)),
            expression_amp=float(rng.uniform(0.2, 1.0)),
            expression_freq=float(rng.uniform(0.06, 0.22)),
        )
        return cls(identity_vector=identity, motion_params=motion, seed=seed)


class _Geometry:
    """Canonical face geometry in face-local coordinates (origin at face
    center, x right, y down, units are fractions of image size)."""

    def __init__(self, identity: np.ndarray):
        v = identity
        self.head_a = 0.28 + 0.035 * v[0]        # head half-width
        self.head_b = 0.36 + 0.035 * v[1]        # head half-height
        self.eye_dx = 0.125 + 0.022 * v[2]       # half eye spacing
        self.eye_y = -0.065 + 0.018 * v[3]       # eye row (above center)
        self.eye_w = 0.052 + 0.010 * v[4]
        self.eye_h = 0.030 + 0.007 * v[5]
        self.iris_r = 0.016 + 0.004 * v[6]
        self.brow_dy = 0.055 + 0.012 * v[7]      # brow height above eye
        self.brow_tilt = 0.015 * v[8]
        self.nose_w = 0.042 + 0.010 * v[9]
        self.nose_len = 0.15 + 0.028 * v[10]     # bridge top to base
        self.mouth_y = 0.185 + 0.028 * v[11]
        self.mouth_w = 0.095 + 0.022 * v[12]
        self.lip_h = 0.028 + 0.008 * v[13]

        # Colors: warm skin range, iris/lip hues from the last entries.
        s = 0.5 + 0.5 * v[14]
        self.skin = np.array([0.72 + 0.16 * s, 0.55 + 0.14 * s, 0.42 + 0.12 * s])
        h = 0.5 + 0.5 * v[15]
        self.iris = np.array([0.15 + 0.25 * h, 0.25 + 0.30 * (1 - h), 0.45 + 0.35 * h])
        self.lip = np.array([0.55 + 0.25 * h, 0.25 + 0.10 * (1 - h), 0.28])
        self.brow_color = np.array([0.18, 0.12, 0.08])
        self.bg = np.array([0.28 + 0.10 * v[14] * v[15],
                            0.32 - 0.06 * v[14],
                            0.38 + 0.08 * v[15]])
        self.bg = np.clip(self.bg, 0.05, 0.95)

    # -- landmark construction ------------------------------------------

    def landmarks(self, openness: float) -> np.ndarray:
        """68 canonical (x, y) points in face-local coordinates."""
        pts = []

        # Jaw (17): lower head-ellipse arc, left ear over chin to right ear.
        alphas = np.linspace(np.pi + 0.28, -0.28, 17)
        pts += [(self.head_a * np.cos(a), self.head_b * np.sin(a)) for a in alphas]

        # Brows (5 + 5): arched line segments above the eyes.
        brow_y = self.eye_y - self.brow_dy
        half = 1.35 * self.eye_w
        arch = 0.35 * self.brow_dy
        xs = np.linspace(-half, half, 5)
        arc = arch * (1.0 - (xs / half) ** 2)
        for cx, sgn in ((-self.eye_dx, 1.0), (self.eye_dx, -1.0)):
            tilt = sgn * self.brow_tilt * (xs / half)
            pts += [(cx + x, brow_y - a + t) for x, a, t in zip(xs, arc, tilt)]

        # Nose (4 bridge + 5 base).
        top = self.eye_y + 0.025
        base = top + self.nose_len
        for y in np.linspace(top, base - 0.02, 4):
            pts.append((0.0, y))
        for x in np.linspace(-self.nose_w, self.nose_w, 5):
            pts.append((x, base))

        # Eyes (6 each): corners plus upper/lower lid points.
        eye_angles = np.array([np.pi, 2 * np.pi / 3, np.pi / 3, 0.0,
                               -np.pi / 3, -2 * np.pi / 3])
        for cx in (-self.eye_dx, self.eye_dx):
            pts += [(cx + self.eye_w * np.cos(a), self.eye_y - self.eye_h * np.sin(a))
                    for a in eye_angles]

        # Mouth (12 outer + 8 inner) on the lip ellipses; openness widens
        # the vertical radii.
        out_h = self.lip_h * (1.0 + 1.2 * openness)
        in_h = 0.45 * self.lip_h * (0.15 + openness)
        outer = np.linspace(np.pi, -np.pi, 12, endpoint=False)
        inner = np.linspace(np.pi, -np.pi, 8, endpoint=False)
        pts += [(self.mouth_w * np.cos(a), self.mouth_y - out_h * np.sin(a))
                for a in outer]
        pts += [(0.62 * self.mouth_w * np.cos(a), self.mouth_y - in_h * np.sin(a))
                for a in inner]

        return np.asarray(pts, dtype=np.float64)

    # -- rasterization ---------------------------------------------------

    def render(self, u: np.ndarray, w: np.ndarray, openness: float,
               px: float) -> np.ndarray:
        """Render one frame given face-local pixel coordinates.

        u, w: H*W arrays of face-local x/y per pixel; px: smoothing width
        in coordinate units (about 1.2 pixels).  Returns (H, W, 3) floats.
        """

        def ellipse(cx, cy, a, b):
            # Approximate signed distance to the ellipse boundary.
            r = np.sqrt(((u - cx) / a) ** 2 + ((w - cy) / b) ** 2)
            return (r - 1.0) * min(a, b)

        def soft(d):
            return np.clip(0.5 - d / px, 0.0, 1.0)

        img = np.empty(u.shape + (3,), dtype=np.float64)
        img[:] = self.bg

        def paint(mask, color):
            img[:] = img + mask[..., None] * (np.asarray(color) - img)

        head = soft(ellipse(0.0, 0.0, self.head_a, self.head_b))
        # Gentle vertical shading so the face is not flat.
        shade = 1.0 - 0.18 * np.clip((w + self.head_b) / (2 * self.head_b), 0, 1)
        paint(head, self.skin)
        img *= (1.0 - head[..., None] * (1.0 - shade[..., None]))

        brow_y = self.eye_y - self.brow_dy
        for cx, sgn in ((-self.eye_dx, 1.0), (self.eye_dx, -1.0)):
            tilt = sgn * self.brow_tilt
            d = ellipse(cx, brow_y + tilt * (u - cx) / (1.4 * self.eye_w),
                        1.4 * self.eye_w, 0.35 * self.brow_dy)
            paint(soft(d), self.brow_color)

        for cx in (-self.eye_dx, self.eye_dx):
            paint(soft(ellipse(cx, self.eye_y, self.eye_w, self.eye_h)),
                  np.array([0.93, 0.93, 0.92]))
            paint(soft(ellipse(cx, self.eye_y, self.iris_r, self.iris_r)), self.iris)
            paint(soft(ellipse(cx, self.eye_y, 0.45 * self.iris_r,
                               0.45 * self.iris_r)), np.array([0.05, 0.05, 0.05]))

        # Nose: darker ridge plus a base shadow.
        top = self.eye_y + 0.025
        base = top + self.nose_len
        ridge = np.clip(1.0 - np.abs(u) / (0.55 * self.nose_w), 0, 1) * \
            np.clip(1.0 - np.abs(w - (top + base) / 2) / (0.55 * self.nose_len), 0, 1)
        paint(0.35 * ridge, self.skin * 0.82)
        paint(soft(ellipse(0.0, base, self.nose_w, 0.014)), self.skin * 0.70)

        out_h = self.lip_h * (1.0 + 1.2 * openness)
        in_h = 0.45 * self.lip_h * (0.15 + openness)
        paint(soft(ellipse(0.0, self.mouth_y, self.mouth_w, out_h)), self.lip)
        paint(soft(ellipse(0.0, self.mouth_y, 0.62 * self.mouth_w, in_h)),
              np.array([0.16, 0.07, 0.08]))

        return np.clip(img, 0.0, 1.0)


def _trajectory(params: FaceParams, F: int):
    """Per-frame (dx, dy, angle, openness); deterministic in params."""
    rng = np.random.default_rng(params.seed)
    phases = rng.uniform(0.0, 2.0 * np.pi, 4)
    freqs = rng.uniform(0.05, 0.18, 3)
    m = params.motion_params
    t = np.arange(F, dtype=np.float64)
    dx = m.translation_amp * np.sin(2 * np.pi * freqs[0] * t + phases[0])
    dy = m.translation_amp * np.sin(2 * np.pi * freqs[1] * t + phases[1])
    ang = m.rotation_amp * np.sin(2 * np.pi * freqs[2] * t + phases[2])
    openness = m.expression_amp * (0.5 + 0.5 * np.sin(
        2 * np.pi * m.expression_freq * t + phases[3]))
    return dx, dy, ang, openness


def gen_face_video(params: FaceParams, F: int, H: int, W: int):
    """Render a face video with its landmark track and identity vector.

    Returns (video, landmarks, identity):
      video: (F, 3, H, W) float32 in [0, 1]
      landmarks: (F, 68, 2) float64, normalized (x, y) in [0, 1]
      identity: (16,) float64 copy of the identity vector
    """
    if F < 1:
        raise DimensionError(f"F must be >= 1, got {F}")
    if H % 8 != 0 or W % 8 != 0 or H <= 0 or W <= 0:
        raise DimensionError(f"H and W must be positive multiples of 8, got {H}x{W}")

    geom = _Geometry(params.identity_vector)
    dx, dy, ang, openness = _trajectory(params, F)
    center = np.array([0.5, 0.52])

    # Pixel centers in normalized image coordinates.
    ys = (np.arange(H) + 0.5) / H
    xs = (np.arange(W) + 0.5) / W
    gx, gy = np.meshgrid(xs, ys)
    px = 1.2 / min(H, W)

    video = np.empty((F, 3, H, W), dtype=np.float32)
    tracks = np.empty((F, 68, 2), dtype=np.float64)
    for f in range(F):
        c, s = np.cos(ang[f]), np.sin(ang[f])
        # Inverse transform of pixel coords into face-local space.
        rx = gx - center[0] - dx[f]
        ry = gy - center[1] - dy[f]
        u = c * rx + s * ry
        w = -s * rx + c * ry
        frame = geom.render(u, w, openness[f], px)
        video[f] = frame.transpose(2, 0, 1).astype(np.float32)

        pts = geom.landmarks(openness[f])
        fx = c * pts[:, 0] - s * pts[:, 1] + center[0] + dx[f]
        fy = s * pts[:, 0] + c * pts[:, 1] + center[1] + dy[f]
        tracks[f, :, 0] = fx
        tracks[f, :, 1] = fy

    # Geometry margins keep every feature inside the frame; guard anyway.
    assert tracks.min() >= 0.0 and tracks.max() <= 1.0, (
        f"landmarks left the frame: [{tracks.min():.4f}, {tracks.max():.4f}]")
    return video, tracks, params.identity_vector.copy()
