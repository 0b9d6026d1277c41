from builtins import ValueError, dict, int, str
from typing import Optional


class ClusteringError(ValueError):
    """Base class for every input the library rejects.

    Each subclass carries a stable machine code; the CLI and the HTTP API
    serialize it with `to_dict` so callers can branch on `error` without
    parsing messages.
    """

    code = "ClusteringError"

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.line = line

    def to_dict(self) -> dict:
        body = {"error": self.code, "message": self.message}
        if self.line is not None:
            body["line"] = self.line
        return body


class SelfLoopError(ClusteringError):
    code = "SelfLoop"


class DuplicateEdgeError(ClusteringError):
    code = "DuplicateEdge"


class VertexOutOfRangeError(ClusteringError):
    code = "VertexOutOfRange"


class EmptyClusterError(ClusteringError):
    code = "EmptyCluster"


class IsolatedVertexError(ClusteringError):
    code = "IsolatedVertex"


class EmptyGraphError(ClusteringError):
    code = "EmptyGraph"


class InvalidClusteringError(ClusteringError):
    code = "InvalidClustering"


class InvalidTrialsError(ClusteringError):
    code = "InvalidTrials"


class InvalidSeedError(ClusteringError):
    code = "InvalidSeed"


class InvalidInstanceError(ClusteringError):
    code = "InvalidInstance"


class InstanceTooLargeError(ClusteringError):
    code = "InstanceTooLarge"


class TooLargeError(ClusteringError):
    code = "TooLarge"


class LambdaOutOfRangeError(ClusteringError):
    code = "LambdaOutOfRange"


class ParseError(ClusteringError):
    code = "ParseError"


class MissingVertexWeightError(ClusteringError):
    code = "MissingVertexWeight"


class NonPositiveWeightError(ClusteringError):
    code = "NonPositiveWeight"
