"""Self-generated test toolchain: question banks, seeded test assembly,
export, scoring and grade statistics."""

from .analytics import (ECTS_SCALE, EctsBand, EctsScale, ScoringPolicy,
                        aggregate_best_k, course_percentage, pct_to_grade,
                        score_response)
from .assemble import (RngState, assemble_test, bounded_uniform, rng_next,
                       shuffle)
from .bank import Dedup, contribution_stats, merge_banks
from .jqz import parse_bank, serialize_bank
from .model import (Alternative, AnovaResult, AnswerKey, AssembledTest,
                    AssemblyConfig, ContributionStats, GradeRecord,
                    GroupSummary, Issue, LetterBucket, Question, QuestionBank,
                    ResponseSheet, TestItem, TestScore, TukeyContrast,
                    validate_question)
from .srange import srange_cdf, srange_quantile
from .stats import (expand_mark_distribution, group_summary, one_way_anova,
                    tukey_hsd)

__version__ = "0.1.0"
