"""Exception types shared across the toolkit.

Everything derives from UdderIdError so callers can catch the toolkit's own
failures without masking genuine bugs. File-not-found stays the builtin.
"""


class UdderIdError(Exception):
    """Base class for toolkit errors."""


class ImageDecodeError(UdderIdError):
    """File exists but is not a decodable PNG/JPEG."""


class CropOutOfBoundsError(UdderIdError):
    """Crop rectangle leaves the (rotated) image bounds."""


class ImageTooSmallError(UdderIdError):
    """Image has no valid LBP center at the requested radius."""


class DegenerateGeometryError(UdderIdError):
    """Teat centers are collinear/coincident or not in convex label order."""


class BoxOutsideCanvasError(UdderIdError):
    """Synthetic rendering asked to draw a box outside the canvas."""


class LayoutMismatchError(UdderIdError):
    """Feature vector layout differs from what the model/dataset expects."""


class EmptyGalleryError(UdderIdError):
    """fit() called with no gallery samples."""


class NonFiniteFeatureError(UdderIdError):
    """A feature vector contains NaN or infinity."""


class AnnotationError(UdderIdError):
    """Annotation file/payload violates the schema.

    `code` is one of: parse-error, missing-teat, duplicate-position,
    non-positive-box. The annotation HTTP endpoint surfaces it in 400 bodies.
    """

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class ManifestError(UdderIdError):
    """Manifest file violates the schema.

    `code` is one of: parse-error, schema-violation, duplicate-entry.
    """

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class ProtocolError(UdderIdError):
    """Evaluation protocol cannot be formed (e.g. cow missing a session)."""


class ExtractionError(UdderIdError):
    """Feature extraction failed for a specific sample; carries its identity."""

    def __init__(self, sample_id: str, cause: Exception):
        super().__init__(f"sample {sample_id}: {cause}")
        self.sample_id = sample_id
        self.cause = cause
