#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "triqal/families.hpp"
#include "triqal/frobenius.hpp"
#include "triqal/io.hpp"
#include "triqal/lawrence.hpp"
#include "triqal/lens.hpp"
#include "triqal/pentagon.hpp"

namespace py = pybind11;
using namespace triqal;

namespace {

using CArray = py::array_t<Scalar, py::array::c_style | py::array::forcecast>;

DenseTensor to_tensor(const CArray& a, std::string_view sig) {
    const auto legs = parse_signature(sig);
    if (static_cast<std::size_t>(a.ndim()) != legs.size()) {
        throw TensorError("expected an array with " + std::to_string(legs.size()) + " axes");
    }
    const int n = legs.empty() ? 1 : static_cast<int>(a.shape(0));
    for (py::ssize_t k = 0; k < a.ndim(); ++k) {
        if (a.shape(k) != n) throw TensorError("all axes must have the same length");
    }
    return DenseTensor(n, legs, std::vector<Scalar>(a.data(), a.data() + a.size()));
}

CArray to_array(const DenseTensor& t) {
    std::vector<py::ssize_t> shape(t.rank(), t.dim());
    CArray out(shape);
    std::copy(t.data().begin(), t.data().end(), out.mutable_data());
    return out;
}

BilinearForm form_or_identity(const std::optional<CArray>& h, int n) {
    return h ? BilinearForm(to_tensor(*h, "ll")) : BilinearForm::identity(n);
}

BasisPermutation perm_or_identity(const std::optional<std::vector<int>>& p, int n) {
    return p ? BasisPermutation(*p) : BasisPermutation::identity(n);
}

py::dict six_to_dict(const SixVars& v) {
    py::dict d;
    d["a"] = v.a;
    d["b"] = v.b;
    d["c"] = v.c;
    d["d"] = v.d;
    d["f"] = v.f;
    d["y"] = v.y;
    return d;
}

SixVars dict_to_six(const py::dict& d) {
    const auto get = [&](const char* k) { return d[k].cast<Scalar>(); };
    return {get("a"), get("b"), get("c"), get("d"), get("f"), get("y")};
}

}  // namespace

PYBIND11_MODULE(_triqal, m) {
    m.doc() = "Lawrence 3-algebra residuals, solution families and lens invariants";

    py::register_exception<TensorError>(m, "TensorError", PyExc_ValueError);
    py::register_exception<SingularFormError>(m, "SingularFormError", PyExc_ValueError);

    m.attr("DEFAULT_TOLERANCE") = kDefaultTolerance;

    m.def("family", [](Scalar d, Scalar alpha, int sign, int branch) {
              return six_to_dict(family({d, alpha, sign, branch}));
          },
          py::arg("d"), py::arg("alpha"), py::arg("sign") = 1, py::arg("branch") = 1);
    m.def("trivial_solution", [] { return six_to_dict(trivial_solution()); });
    m.def("embed", [](const py::dict& v) { return to_array(embed(dict_to_six(v))); }, py::arg("vars"),
          "n = 2 Qbar with axes (i, j, s, t)");
    m.def("system23_residuals", [](const py::dict& v) { return system23_residuals(dict_to_six(v)); });
    m.def("eq22_residual", [](const py::dict& v) { return eq22_residual(dict_to_six(v)); });

    m.def("pentagon_residual", [](const CArray& q) { return pentagon_residual(to_tensor(q, "lluu")); });
    m.def("pentagon_coordinate_residual",
          [](const CArray& q) { return pentagon_coordinate_residual(to_tensor(q, "lluu")); });
    m.def("pachner14_residual", [](const CArray& q) { return pachner14_residual(to_tensor(q, "lluu")); });
    m.def("cubic_residual", [](const CArray& q) { return cubic_residual(to_tensor(q, "lluu")); });
    m.def("projector_matrix", [](const CArray& q) { return to_array(projector_matrix(to_tensor(q, "lluu")).B); });
    m.def("projector_residual", [](const CArray& b) { return projector_residual({to_tensor(b, "lu")}); });

    m.def("axiom_residual",
          [](const std::string& which, const CArray& qbar, const std::optional<CArray>& qm,
             const std::optional<std::vector<int>>& p) {
              const auto id = parse_axiom(which);
              if (!id) throw TensorError("unknown axiom '" + which + "'");
              const DenseTensor q = to_tensor(qbar, "lluu");
              std::optional<DenseTensor> mm;
              if (qm) mm = to_tensor(*qm, "lllu");
              return axiom_residual(ThreeAlgebra(perm_or_identity(p, q.dim()), q, mm), *id);
          },
          py::arg("which"), py::arg("qbar"), py::arg("qm") = py::none(), py::arg("P") = py::none());

    m.def("derive_m",
          [](const CArray& qbar, const std::optional<CArray>& h) {
              const DenseTensor q = to_tensor(qbar, "lluu");
              return to_array(derive_m(q, form_or_identity(h, q.dim())));
          },
          py::arg("qbar"), py::arg("h") = py::none());

    m.def("build_full",
          [](const CArray& qbar, const std::optional<CArray>& h, const std::optional<std::vector<int>>& p) {
              const DenseTensor q = to_tensor(qbar, "lluu");
              const FrobeniusAlgebra fa{ThreeAlgebra(perm_or_identity(p, q.dim()), q),
                                        form_or_identity(h, q.dim())};
              const FullThreeAlgebra full = build_full(fa);
              py::dict d;
              d["m04"] = to_array(full.m04);
              d["m13"] = to_array(full.m13);
              d["m22"] = to_array(full.m22);
              d["m31"] = to_array(full.m31);
              d["m40"] = to_array(full.m40);
              return d;
          },
          py::arg("qbar"), py::arg("h") = py::none(), py::arg("P") = py::none());

    m.def("invariant",
          [](int p, int q, const CArray& qbar, const std::optional<CArray>& h) {
              const DenseTensor t = to_tensor(qbar, "lluu");
              return invariant(p, q, t, form_or_identity(h, t.dim()));
          },
          py::arg("p"), py::arg("q"), py::arg("qbar"), py::arg("h") = py::none());

    m.def("lens_network", [](int p, int q) { return network_to_json(build_lens(p, q)).dump(); },
          "JSON dump of the L(p, q) contraction network");

    m.def("load_algebra", [](const std::string& path) {
        const AlgebraFile f = load_algebra(path);
        py::dict d;
        d["n"] = f.n();
        d["P"] = std::vector<int>(f.P.map().begin(), f.P.map().end());
        d["Qbar"] = to_array(f.Qbar);
        d["Qm"] = f.Qm ? py::object(to_array(*f.Qm)) : py::none();
        d["h"] = f.h ? py::object(to_array(*f.h)) : py::none();
        return d;
    });
    m.def("save_algebra",
          [](const std::string& path, const CArray& qbar, const std::optional<std::vector<int>>& p,
             const std::optional<CArray>& qm, const std::optional<CArray>& h) {
              const DenseTensor q = to_tensor(qbar, "lluu");
              AlgebraFile f{perm_or_identity(p, q.dim()), q, std::nullopt, std::nullopt};
              if (qm) f.Qm = to_tensor(*qm, "lllu");
              if (h) f.h = to_tensor(*h, "ll");
              save_algebra(path, f);
          },
          py::arg("path"), py::arg("qbar"), py::arg("P") = py::none(), py::arg("qm") = py::none(),
          py::arg("h") = py::none());
}
