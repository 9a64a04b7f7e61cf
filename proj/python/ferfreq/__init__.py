"""Narrow-band spectral facial expression pipeline."""

from ._core import (
    EMOTIONS,
    BandKernel,
    ConfusionCounts,
    CorpusEntry,
    DatasetManifest,
    EmptyCorpusError,
    FeatureTable,
    FormatError,
    IoError,
    KernelSpec,
    LabelCounts,
    LabelMetrics,
    MetricsReport,
    MLPConfig,
    ParameterError,
    RFConfig,
    SplitSpec,
    SynthImage,
    SynthResult,
    SynthSpec,
    TrainedModel,
    TrainingError,
    __version__,
    aggregate_by_image,
    band_image,
    build_feature_table,
    config_hash,
    confusion,
    decode_to_gray,
    default_config_json,
    export_csv,
    fft2,
    fftshift,
    generate,
    ifft2,
    load_model,
    load_table,
    make_kernels,
    metrics,
    predict,
    render_csv,
    render_json,
    render_text,
    resize_bicubic,
    save_model,
    save_table,
    scan_corpus,
    split_domain,
    stratified_rows,
    take_rows,
    train_forest_model,
    train_network_model,
    unshift,
    write_corpus,
    write_pgm,
)

__all__ = [
    "EMOTIONS",
    "BandKernel",
    "ConfusionCounts",
    "CorpusEntry",
    "DatasetManifest",
    "EmptyCorpusError",
    "FeatureTable",
    "FormatError",
    "IoError",
    "KernelSpec",
    "LabelCounts",
    "LabelMetrics",
    "MetricsReport",
    "MLPConfig",
    "ParameterError",
    "RFConfig",
    "SplitSpec",
    "SynthImage",
    "SynthResult",
    "SynthSpec",
    "TrainedModel",
    "TrainingError",
    "__version__",
    "aggregate_by_image",
    "band_image",
    "build_feature_table",
    "config_hash",
    "confusion",
    "decode_to_gray",
    "default_config_json",
    "export_csv",
    "fft2",
    "fftshift",
    "generate",
    "ifft2",
    "load_model",
    "load_table",
    "make_kernels",
    "metrics",
    "predict",
    "render_csv",
    "render_json",
    "render_text",
    "resize_bicubic",
    "save_model",
    "save_table",
    "scan_corpus",
    "split_domain",
    "stratified_rows",
    "take_rows",
    "train_forest_model",
    "train_network_model",
    "unshift",
    "write_corpus",
    "write_pgm",
]
