#include <pybind11/pybind11.h>

#include "valfan/commands.hpp"

namespace py = pybind11;

namespace {

py::dict wrap(const valfan::CommandResult& r) {
    py::dict d;
    d["exit_code"] = r.exit_code;
    d["output"] = r.output;
    return d;
}

} // namespace

PYBIND11_MODULE(_valfan, m) {
    m.doc() = "exact fans over rank-one value groups: admissibility, noetherian "
              "reduction, completion, toric reports. All entry points take and "
              "return fan documents / JSON reports as strings; exit_code follows "
              "the CLI convention (0 pass, 1 verified negative, 2 engine "
              "exhaustion or oracle stall, 3 bad input).";

    m.def(
        "fixture",
        [](const std::string& name, std::size_t n, unsigned long r, std::size_t mdim) {
            return wrap(valfan::cmd_fixture(name, n, r, mdim));
        },
        py::arg("name"), py::arg("n") = 0, py::arg("r") = 0, py::arg("m") = 0,
        "Emit a built-in fan document (dart, dart-lift, dart-completion, badnorm, "
        "thm45, model).");

    m.def(
        "check",
        [](const std::string& text, const std::string& against) {
            return wrap(valfan::cmd_check(text, against));
        },
        py::arg("text"), py::arg("against") = "",
        "Admissibility / completeness report; with `against`, verify that `text` "
        "completes the given subfan.");

    m.def(
        "reduce", [](const std::string& text) { return wrap(valfan::cmd_reduce(text)); },
        py::arg("text"), "Noetherian reduction to a rational lift.");

    m.def(
        "complete",
        [](const std::string& text, std::size_t cap, const std::string& strategies,
           std::uint64_t seed, const std::string& replay) {
            return wrap(valfan::cmd_complete(text, cap, strategies, seed, replay));
        },
        py::arg("text"), py::arg("cap") = 0, py::arg("strategies") = "",
        py::arg("seed") = 0x5EED, py::arg("replay") = "",
        "Admissible completion (half-space documents) or the rational engine with "
        "an embedded trace (full documents).");

    m.def(
        "toric_report", [](const std::string& text) { return wrap(valfan::cmd_toric_report(text)); },
        py::arg("text"), "Coordinate algebras, dual complex, segment models, semistability.");

    m.def(
        "render",
        [](const std::string& text, int depth) { return wrap(valfan::cmd_render(text, depth)); },
        py::arg("text"), py::arg("depth") = 24, "SVG of the height-one complex.");
}
