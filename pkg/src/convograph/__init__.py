"""Conversation-graph metrics and sentiment analytics for brand communities.

The package turns raw interaction records (JSONL or CSV) into an
undirected conversation graph, reports its structural properties,
detects communities, and trains a naive Bayes sentiment classifier over
the same records.
"""

from .classify import (
    TOY_CORPUS,
    Prediction,
    SentimentModel,
    label_corpus,
    load_model,
    predict,
    save_model,
    split,
    train,
)
from .community import Partition, detect_communities, modularity
from .config import BrandConfig, RunConfig, load_run_config
from .errors import (
    ConvographError,
    EmptyInputError,
    StratificationError,
    TrainingError,
    UndefinedMetricError,
    ValidationError,
)
from .evaluate import (
    ConfusionMatrix,
    EvalReport,
    confusion,
    evaluate,
    format_percentages,
    kappa_band,
    sentiment_percentages,
)
from .graph import EdgePolicy, Graph, build_graph, export_edgelist
from .ingest import (
    InteractionRecord,
    LabeledDocument,
    extract_mentions,
    normalize_handle,
    parse_labeled_corpus,
    parse_records,
    write_records_jsonl,
)
from .metrics import (
    MetricsReport,
    average_degree,
    average_path_length,
    compute_all,
    connected_components,
    density,
    diameter,
    reachability,
    shortest_path_lengths,
)
from .textprep import (
    StemRule,
    TokenPipelineConfig,
    filter_stopwords,
    load_pipeline_config,
    preprocess,
    stem,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "TOY_CORPUS",
    "BrandConfig",
    "ConfusionMatrix",
    "ConvographError",
    "EdgePolicy",
    "EmptyInputError",
    "EvalReport",
    "Graph",
    "InteractionRecord",
    "LabeledDocument",
    "MetricsReport",
    "Partition",
    "Prediction",
    "RunConfig",
    "SentimentModel",
    "StemRule",
    "StratificationError",
    "TokenPipelineConfig",
    "TrainingError",
    "UndefinedMetricError",
    "ValidationError",
    "average_degree",
    "average_path_length",
    "build_graph",
    "compute_all",
    "confusion",
    "connected_components",
    "density",
    "detect_communities",
    "diameter",
    "evaluate",
    "export_edgelist",
    "extract_mentions",
    "filter_stopwords",
    "format_percentages",
    "kappa_band",
    "label_corpus",
    "load_model",
    "load_pipeline_config",
    "load_run_config",
    "modularity",
    "normalize_handle",
    "parse_labeled_corpus",
    "parse_records",
    "predict",
    "preprocess",
    "reachability",
    "save_model",
    "sentiment_percentages",
    "shortest_path_lengths",
    "split",
    "stem",
    "tokenize",
    "train",
    "write_records_jsonl",
]
