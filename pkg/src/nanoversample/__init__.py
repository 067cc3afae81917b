"""NaN-aware synthetic oversampling for imbalanced tabular data."""

from .csvio import CsvOptions, read_csv, write_csv
from .exceptions import AllocationWarning, DataError
from .execution import ResampleResult, resample, resample_arrays
from .geometry import MaskedDistance, k_nearest, masked_distance, shared_observed_dims
from .nanpolicy import NanStrategy, combine_pair, combine_single
from .report import Report, build_report
from .samplers import Method, SynthesisConfig, adasyn_nan, rose_nan, smote_nan
from .strategy import SamplingPlan, SamplingSpec, parse_sampling_spec, resolve
from .streams import StreamKey, derive_stream
from .tabular import (
    ClassPartition,
    LabeledDataset,
    MissingnessProfile,
    missingness_profile,
    nan_rate,
    partition_by_class,
)

__version__ = "0.1.0"
