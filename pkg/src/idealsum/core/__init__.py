"""核心分析模块"""
from .verdict import Verdict, VerdictStatus
from .sequence import SequencePrefix, VectorSequencePrefix, IndexSet
from .matrix_base import SummabilityMatrix
from .matrix_family import MatrixFamily
from .matrix_factory import MatrixFactory, get_matrix
from .gauge_base import GaugeFunction, GaugeFamily
from .gauge_factory import GaugeFactory, get_gauge
from .ideal_base import IdealHandle
from .ideal_factory import IdealFactory, get_ideal
from .summability import ConvergenceRequest, b_summable, strong_summable, statistically_convergent
from .banach_sim import FiniteDimSpace
from .corpus import CORPORA, available_corpora, generate, generate_vectors
from .sequence_io import read_sequence, read_vectors, sequence_text, write_atomic, write_sequence
from .analyzer import SequenceAnalyzer, AnalysisReport

__all__ = [
    'SequenceAnalyzer',
    'AnalysisReport',
    'Verdict',
    'VerdictStatus',
    'SequencePrefix',
    'VectorSequencePrefix',
    'IndexSet',
    'SummabilityMatrix',
    'MatrixFamily',
    'MatrixFactory',
    'get_matrix',
    'GaugeFunction',
    'GaugeFamily',
    'GaugeFactory',
    'get_gauge',
    'IdealHandle',
    'IdealFactory',
    'get_ideal',
    'ConvergenceRequest',
    'b_summable',
    'strong_summable',
    'statistically_convergent',
    'FiniteDimSpace',
    'CORPORA',
    'available_corpora',
    'generate',
    'generate_vectors',
    'read_sequence',
    'read_vectors',
    'sequence_text',
    'write_atomic',
    'write_sequence',
]
