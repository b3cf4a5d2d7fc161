from .dataset import (
    ProblemRecord,
    Section,
    dataset_stats,
    dump_dataset,
    load_dataset,
    pad_options,
    record_from_dict,
    synthetic_suite_path,
)
from .metrics import (
    EvalReport,
    QuestionResult,
    ScoreScale,
    accuracy,
    default_scale,
    load_scale,
    overall_score,
    save_report,
    scaled_score,
)
from .runners import extend_record, rouge_l, run_ar, run_lr_extend
