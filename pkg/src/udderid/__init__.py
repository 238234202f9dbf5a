"""Biometric identification of dairy cows from NIR udder images.

Pipeline: load and rotate/crop frames (imaging), extract rotation-invariant
LBP texture histograms (texture) and teat-geometry descriptors (geometry),
train classical classifiers over an enrolled gallery (classifiers), and run
gallery/probe identification protocols with randomized group-size trials
(evaluation). A seeded synthetic herd (synthetic) provides ground truth for
desk-scale validation, and dataset_io + cli + the bundled annotation UI
cover persistence and operation.
"""

__version__ = "0.1.0"
