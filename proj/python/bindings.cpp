#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lossgap/analytic.hpp"
#include "lossgap/attack.hpp"
#include "lossgap/bounds.hpp"
#include "lossgap/gaussian_lab.hpp"
#include "lossgap/normal.hpp"
#include "lossgap/trainer.hpp"

namespace py = pybind11;
using namespace lossgap;

PYBIND11_MODULE(_core, m) {
    m.doc() = "loss-gap analysis of standard vs adversarially trained linear models "
              "on Gaussian data";

    py::class_<GaussianSpec>(m, "GaussianSpec")
        .def(py::init<int, double, double, double>(), py::arg("d"), py::arg("mu"),
             py::arg("sigma"), py::arg("gamma"))
        .def_readonly("d", &GaussianSpec::d)
        .def_readonly("mu", &GaussianSpec::mu)
        .def_readonly("sigma", &GaussianSpec::sigma)
        .def_readonly("gamma", &GaussianSpec::gamma);

    py::enum_<EpsRegimeKind>(m, "EpsRegimeKind")
        .value("DecreasingInEps", EpsRegimeKind::DecreasingInEps)
        .value("IncreasingInEps", EpsRegimeKind::IncreasingInEps)
        .value("AlwaysDecreasing", EpsRegimeKind::AlwaysDecreasing);

    py::class_<EpsRegime>(m, "EpsRegime")
        .def_readonly("kind", &EpsRegime::kind)
        .def_readonly("threshold", &EpsRegime::threshold);

    py::enum_<GapOrdering>(m, "GapOrdering")
        .value("RobGreater", GapOrdering::RobGreater)
        .value("StdGreater", GapOrdering::StdGreater)
        .value("Equal", GapOrdering::Equal);

    py::class_<RobRoot>(m, "RobRoot")
        .def_readonly("n0", &RobRoot::n0)
        .def_readonly("bracket_lo", &RobRoot::bracket_lo)
        .def_readonly("bracket_hi", &RobRoot::bracket_hi);

    py::class_<RobMinimum>(m, "RobMinimum")
        .def_readonly("n1", &RobMinimum::n1)
        .def_readonly("value", &RobMinimum::value);

    m.def("normal_cdf", &normal_cdf, py::arg("x"));
    m.def("loss_gap_std", &loss_gap_std, py::arg("spec"), py::arg("n"));
    m.def("loss_gap_rob", &loss_gap_rob, py::arg("spec"), py::arg("n"), py::arg("eps"));
    m.def("dstd_dn", &dstd_dn, py::arg("spec"), py::arg("n"));
    m.def("drob_deps", &drob_deps, py::arg("spec"), py::arg("n"), py::arg("eps"));
    m.def("eps_regime", &eps_regime, py::arg("spec"), py::arg("n"), py::arg("eps"));
    m.def("rob_root", &rob_root, py::arg("spec"), py::arg("eps"));
    m.def("rob_minimum", &rob_minimum, py::arg("spec"), py::arg("eps"),
          py::arg("n_ceiling") = 1e6);
    m.def("compare_rob_std", &compare_rob_std, py::arg("spec"), py::arg("n"), py::arg("eps"),
          py::arg("tol") = 1e-12);
    m.def("bayes_accuracy", &bayes_accuracy, py::arg("spec"));

    py::class_<LabeledSample>(m, "LabeledSample")
        .def(py::init([](std::vector<double> x, int y) {
                 return LabeledSample{std::move(x), y};
             }),
             py::arg("x"), py::arg("y"))
        .def_readonly("x", &LabeledSample::x)
        .def_readonly("y", &LabeledSample::y);

    py::class_<Dataset>(m, "Dataset")
        .def_readonly("samples", &Dataset::samples)
        .def_readonly("d", &Dataset::d)
        .def_readonly("seed_tag", &Dataset::seed_tag)
        .def("__len__", [](const Dataset& d) { return d.samples.size(); });

    py::class_<LinearModel>(m, "LinearModel")
        .def(py::init<std::vector<double>, double>(), py::arg("theta"), py::arg("gamma"))
        .def_readonly("theta", &LinearModel::theta)
        .def_readonly("gamma", &LinearModel::gamma);

    py::class_<GapEstimate>(m, "GapEstimate")
        .def_readonly("mean", &GapEstimate::mean)
        .def_readonly("stderr", &GapEstimate::stderr_)
        .def_readonly("trials", &GapEstimate::trials);

    py::enum_<MarginForm>(m, "MarginForm")
        .value("Mean", MarginForm::Mean)
        .value("Sum", MarginForm::Sum);

    m.def("sample_dataset", &sample_dataset, py::arg("spec"), py::arg("n"), py::arg("seed"),
          py::arg("label_flip") = 0.0);
    m.def("erm_std", &erm_std, py::arg("data"), py::arg("gamma"));
    m.def("erm_rob", &erm_rob, py::arg("data"), py::arg("gamma"), py::arg("eps"),
          py::arg("form") = MarginForm::Mean);
    m.def("linear_loss", &linear_loss, py::arg("model"), py::arg("sample"));
    m.def("adversarial_linear_loss", &adversarial_linear_loss, py::arg("model"),
          py::arg("sample"), py::arg("eps"));
    m.def("test_accuracy", &test_accuracy, py::arg("model"), py::arg("spec"),
          py::arg("n_test"), py::arg("seed"));

    py::enum_<Adversary>(m, "Adversary")
        .value("none", Adversary::None)
        .value("GradSign", Adversary::GradSign)
        .value("MeanSign", Adversary::MeanSign);

    py::enum_<InitKind>(m, "InitKind")
        .value("Zeros", InitKind::Zeros)
        .value("SeededUniform", InitKind::SeededUniform);

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("learning_rate", &TrainConfig::learning_rate)
        .def_readwrite("epochs", &TrainConfig::epochs)
        .def_readwrite("eps", &TrainConfig::eps)
        .def_readwrite("adversary", &TrainConfig::adversary)
        .def_readwrite("init", &TrainConfig::init)
        .def_readwrite("init_scale", &TrainConfig::init_scale)
        .def_readwrite("init_seed", &TrainConfig::init_seed)
        .def_readwrite("record_theta", &TrainConfig::record_theta);

    py::class_<EpochRecord>(m, "EpochRecord")
        .def_readonly("epoch", &EpochRecord::epoch)
        .def_readonly("mean_loss", &EpochRecord::mean_loss)
        .def_readonly("theta_hash", &EpochRecord::theta_hash)
        .def_readonly("theta", &EpochRecord::theta);

    py::class_<TrainTrace>(m, "TrainTrace")
        .def_readonly("epochs", &TrainTrace::epochs);

    m.def("train", &train, py::arg("data"), py::arg("gamma"), py::arg("config"));

    py::enum_<SolverKind>(m, "SolverKind")
        .value("ExactErm", SolverKind::ExactErm)
        .value("GradientDescent", SolverKind::GradientDescent);

    py::class_<Solver>(m, "Solver")
        .def(py::init<>())
        .def_readwrite("kind", &Solver::kind)
        .def_readwrite("config", &Solver::config);

    m.def("empirical_loss_gap", &empirical_loss_gap, py::arg("spec"), py::arg("n"),
          py::arg("eps"), py::arg("trials"), py::arg("master_seed"),
          py::arg("solver") = Solver{});

    py::class_<LossRecord>(m, "LossRecord")
        .def(py::init([](std::string id, double loss, bool member) {
                 return LossRecord{std::move(id), loss, member};
             }),
             py::arg("example_id"), py::arg("loss"), py::arg("is_member"))
        .def_readonly("example_id", &LossRecord::example_id)
        .def_readonly("loss", &LossRecord::loss)
        .def_readonly("is_member", &LossRecord::is_member);

    py::enum_<ThresholdMethod>(m, "ThresholdMethod")
        .value("MedianMidpoint", ThresholdMethod::MedianMidpoint)
        .value("MeanMidpoint", ThresholdMethod::MeanMidpoint);

    py::class_<Calibration>(m, "Calibration")
        .def_readonly("tau", &Calibration::tau)
        .def_readonly("degenerate", &Calibration::degenerate);

    py::class_<AttackReport>(m, "AttackReport")
        .def_readonly("tau", &AttackReport::tau)
        .def_readonly("accuracy", &AttackReport::accuracy)
        .def_readonly("loss_gap", &AttackReport::loss_gap)
        .def_readonly("n_members", &AttackReport::n_members)
        .def_readonly("n_nonmembers", &AttackReport::n_nonmembers)
        .def_readonly("method", &AttackReport::method)
        .def_readonly("degenerate_calibration", &AttackReport::degenerate_calibration);

    m.def("calibrate_threshold", &calibrate_threshold, py::arg("member_losses"),
          py::arg("nonmember_losses"), py::arg("method"));
    m.def("attack_accuracy", &attack_accuracy, py::arg("records"), py::arg("tau"),
          py::arg("method") = ThresholdMethod::MedianMidpoint, py::arg("degenerate") = false);
    m.def("comparative_leakage", &comparative_leakage, py::arg("loss_a"), py::arg("loss_b"));
    m.def("run_membership_experiment", &run_membership_experiment, py::arg("spec"),
          py::arg("n"), py::arg("eps"), py::arg("trials"), py::arg("master_seed"),
          py::arg("method"));
    m.def("load_loss_trace",
          py::overload_cast<const std::string&>(&load_loss_trace), py::arg("path"));

    py::class_<VectorSpec>(m, "VectorSpec")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("mu"),
             py::arg("sigma"))
        .def_readonly("mu", &VectorSpec::mu)
        .def_readonly("sigma", &VectorSpec::sigma);

    m.def("kappa", &kappa, py::arg("x"), py::arg("delta"));
    m.def("bound_original", &bound_original, py::arg("spec"), py::arg("eps"));
    m.def("bound_improved", &bound_improved, py::arg("spec"), py::arg("eps"));
    m.def("bound_label_noise", &bound_label_noise, py::arg("spec"), py::arg("eps"),
          py::arg("zeta"));
}
