#include "liomnet/entanglement.hpp"
#include "liomnet/errors.hpp"
#include "liomnet/exact_diag.hpp"
#include "liomnet/harness.hpp"
#include "liomnet/liom_metrics.hpp"
#include "liomnet/tensor_network.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace liomnet;

namespace {

ChainSpec chain(double j, double delta, double w, std::vector<double> fields) {
  return make_chain(j, delta, w, std::move(fields));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tensor-network LIOMs and two-block entanglement for disordered XXZ chains";

  static py::exception<Error> base_error(m, "Error");
  static py::exception<ArgumentError> argument_error(m, "ArgumentError", base_error.ptr());
  static py::exception<CapacityError> capacity_error(m, "CapacityError", base_error.ptr());
  static py::exception<ContractError> contract_error(m, "ContractError", base_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ArgumentError& e) {
      py::set_error(argument_error, e.what());
    } catch (const CapacityError& e) {
      py::set_error(capacity_error, e.what());
    } catch (const ContractError& e) {
      py::set_error(contract_error, e.what());
    }
  });

  py::class_<ChainSpec>(m, "ChainSpec")
      .def(py::init(&chain), "j"_a, "delta"_a, "disorder_w"_a, "fields"_a)
      .def_readonly("n_sites", &ChainSpec::n_sites)
      .def_readonly("coupling_j", &ChainSpec::coupling_j)
      .def_readonly("anisotropy_delta", &ChainSpec::anisotropy_delta)
      .def_readonly("disorder_w", &ChainSpec::disorder_w)
      .def_readonly("fields", &ChainSpec::fields);

  py::class_<MeritReport>(m, "MeritReport")
      .def_readonly("delta_total", &MeritReport::delta_total)
      .def_readonly("delta_interior", &MeritReport::delta_interior)
      .def_readonly("delta_boundary", &MeritReport::delta_boundary);

  m.def("sample_fields", &sample_fields, "seed"_a, "realization"_a, "n_sites"_a, "disorder_w"_a);

  m.def("hamiltonian", [](const ChainSpec& spec, int first, int last) {
    return build_hamiltonian(spec, SiteRange(first, last)).matrix();
  }, "spec"_a, "first"_a, "last"_a, "Dense XXZ Hamiltonian on sites [first, last] (1-based).");

  m.def("trace_h_squared", &trace_h_squared, "spec"_a);

  m.def("exact_liom", [](const ChainSpec& spec, int site, int dense_limit) {
    return exact_liom(spec, site, dense_limit).matrix();
  }, "spec"_a, "site"_a, "dense_limit"_a = default_dense_limit);

  m.def("tn_liom", [](const ChainSpec& spec, int block_legs, int first_site, int site,
                      int dense_limit) {
    return tn_liom(spec, WindowLayout::make(block_legs, first_site), site, dense_limit).matrix();
  }, "spec"_a, "block_legs"_a, "first_site"_a, "site"_a, "dense_limit"_a = default_dense_limit,
     "LIOM from the two-layer network on the 2b-site window starting at first_site.");

  m.def("merit", [](const ChainSpec& spec, const Eigen::MatrixXcd& tau) {
    const SiteRange full = spec.full_range();
    return merit(DenseOperator(full, tau, OperatorKind::hermitian), build_hamiltonian(spec, full));
  }, "spec"_a, "tau"_a, "Figure of merit of tau against the full-chain Hamiltonian.");

  m.def("merit_split", [](const ChainSpec& spec, const Eigen::MatrixXcd& tau, int first, int last) {
    const SiteRange window(first, last);
    return merit_split(DenseOperator(window, tau, OperatorKind::hermitian), spec, window);
  }, "spec"_a, "tau"_a, "first"_a, "last"_a);

  m.def("sigma_merit_analytic", &sigma_merit_analytic, "spec"_a, "site"_a);

  m.def("neel_state", &neel_state, "n_sites"_a);
  m.def("von_neumann_entropy", &von_neumann_entropy, "rho"_a);

  m.def("tn_entropy_trace", [](const ChainSpec& spec, int block_legs, std::vector<double> times,
                               const std::string& path) {
    TimeGrid grid{std::move(times)};
    EntropyOptions options;
    if (path == "dense") options.path = DiagonalPath::dense;
    else if (path == "termwise") options.path = DiagonalPath::termwise;
    else if (path != "auto") throw ArgumentError("path must be auto, dense or termwise");
    return tn_entropy_trace(spec, WindowLayout::make(block_legs, 1), grid, options).entropy;
  }, "spec"_a, "block_legs"_a, "times"_a, "path"_a = "auto");

  m.def("exact_entropy_trace", [](const ChainSpec& spec, int cut, const std::vector<double>& times,
                                  int dense_limit) {
    return exact_entropy_trace(spec, cut, times, dense_limit);
  }, "spec"_a, "cut"_a, "times"_a, "dense_limit"_a = default_dense_limit);

  m.def("run_experiment", [](const std::string& config_text) {
    ExperimentConfig cfg;
    apply_config_text(cfg, config_text);
    py::dict out;
    for (const auto& file : render_experiment(cfg)) out[py::str(file.name)] = file.contents;
    return out;
  }, "config_text"_a, "Run an experiment from key=value text; returns {filename: contents}.");
}
