"""
Services package for the Coxeter reflection centralizer toolkit.
"""

from .diagram_analysis_service import DiagramAnalysisService
from .centralizer_service import CentralizerService
from .word_generator_service import WordGeneratorService
from .tits_verification_service import TitsVerificationService, BruteForceOracle

__all__ = [
    'DiagramAnalysisService',
    'CentralizerService',
    'WordGeneratorService',
    'TitsVerificationService',
    'BruteForceOracle',
]
