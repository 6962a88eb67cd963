"""Loss-gap analysis of standard vs adversarially trained linear models on
Gaussian data: closed forms, Monte Carlo verification, a threshold membership
attack, and generalization-gap bounds."""

from ._core import (
    Adversary,
    AttackReport,
    Calibration,
    Dataset,
    EpochRecord,
    EpsRegime,
    EpsRegimeKind,
    GapEstimate,
    GapOrdering,
    GaussianSpec,
    InitKind,
    LabeledSample,
    LinearModel,
    LossRecord,
    MarginForm,
    RobMinimum,
    RobRoot,
    Solver,
    SolverKind,
    ThresholdMethod,
    TrainConfig,
    TrainTrace,
    VectorSpec,
    adversarial_linear_loss,
    attack_accuracy,
    bayes_accuracy,
    bound_improved,
    bound_label_noise,
    bound_original,
    calibrate_threshold,
    compare_rob_std,
    comparative_leakage,
    drob_deps,
    dstd_dn,
    empirical_loss_gap,
    eps_regime,
    erm_rob,
    erm_std,
    kappa,
    linear_loss,
    load_loss_trace,
    loss_gap_rob,
    loss_gap_std,
    normal_cdf,
    rob_minimum,
    rob_root,
    run_membership_experiment,
    sample_dataset,
    test_accuracy,
    train,
)

__all__ = [name for name in dir() if not name.startswith("_")]
