"""Small sequence-to-sequence baselines over tab-separated token files.

The package trains single-layer recurrent and transformer encoder-decoder
models on files where each line holds a whitespace-tokenized source, a tab,
and a whitespace-tokenized target. It never inspects the tokens themselves;
any task framing (such as a trailing instruction token on the source side)
is learned from the data alone.
"""

__version__ = "0.1.0"

from .data import Pair, read_pairs
from .decode import greedy_decode, sequence_accuracy
from .errors import DataError, InternalError, TrainerError, UsageError
from .models import ARCHITECTURES, LstmSeq2Seq, TransformerSeq2Seq, build_model
from .predict import predict_file
from .train import TrainConfig, load_checkpoint, train
from .vocab import BOS, EOS, PAD, UNK, Vocab

__all__ = [
    "ARCHITECTURES",
    "BOS",
    "DataError",
    "EOS",
    "InternalError",
    "LstmSeq2Seq",
    "PAD",
    "Pair",
    "TrainerError",
    "TrainConfig",
    "TransformerSeq2Seq",
    "UNK",
    "UsageError",
    "Vocab",
    "build_model",
    "greedy_decode",
    "load_checkpoint",
    "predict_file",
    "read_pairs",
    "sequence_accuracy",
    "train",
    "__version__",
]
