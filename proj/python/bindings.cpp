#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crowdlag/config.hpp"
#include "crowdlag/driver.hpp"
#include "crowdlag/stepper.hpp"

namespace py = pybind11;
using namespace crowdlag;

namespace {

std::pair<double, double> to_pair(Vec2 v) { return {v.x, v.y}; }

Triangle make_triangle(std::pair<double, double> a, std::pair<double, double> b,
                       std::pair<double, double> c) {
    return {{a.first, a.second}, {b.first, b.second}, {c.first, c.second}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lagrangian moving-mesh crowd flow simulator";

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__repr__", [](Vec2 v) {
            return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });

    py::class_<Triangle>(m, "Triangle")
        .def(py::init(&make_triangle), py::arg("v1"), py::arg("v2"), py::arg("v3"))
        .def_readwrite("v1", &Triangle::v1)
        .def_readwrite("v2", &Triangle::v2)
        .def_readwrite("v3", &Triangle::v3);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("v_free", &ModelParams::v_free)
        .def_readwrite("rho_jam", &ModelParams::rho_jam)
        .def_readwrite("beta_dyn", &ModelParams::beta_dyn)
        .def_readwrite("zigzag_a", &ModelParams::zigzag_a)
        .def_readwrite("zigzag_b", &ModelParams::zigzag_b)
        .def_readwrite("spiral_center", &ModelParams::spiral_center)
        .def_readwrite("spiral_b", &ModelParams::spiral_b);

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &Interval::lo)
        .def_readwrite("hi", &Interval::hi);

    py::class_<NumericalParams>(m, "NumericalParams")
        .def(py::init<>())
        .def_readwrite("dt", &NumericalParams::dt)
        .def_readwrite("remesh_alpha", &NumericalParams::remesh_alpha)
        .def_readwrite("cell_area", &NumericalParams::cell_area)
        .def_readwrite("domain_x", &NumericalParams::domain_x)
        .def_readwrite("domain_y", &NumericalParams::domain_y)
        .def_readwrite("remesh_margin", &NumericalParams::remesh_margin);

    py::enum_<GradientScheme>(m, "GradientScheme")
        .value("LINE", GradientScheme::LineGradient)
        .value("PAPER_LITERAL", GradientScheme::PaperLiteral);

    py::enum_<CaseId>(m, "CaseId")
        .value("STRAIGHT", CaseId::Straight)
        .value("ZIGZAG", CaseId::Zigzag)
        .value("SPIRAL", CaseId::Spiral);

    py::class_<ScenarioSpec>(m, "ScenarioSpec")
        .def(py::init<>())
        .def_readwrite("case_id", &ScenarioSpec::case_id)
        .def_readwrite("model", &ScenarioSpec::model)
        .def_readwrite("numerics", &ScenarioSpec::numerics)
        .def_readwrite("group_center", &ScenarioSpec::group_center)
        .def_readwrite("group_radius", &ScenarioSpec::group_radius)
        .def_readwrite("quadrature_depth", &ScenarioSpec::quadrature_depth);

    py::class_<Mesh>(m, "Mesh")
        .def_property_readonly("epoch", [](const Mesh& mm) { return mm.epoch; })
        .def("vertex_count", &Mesh::vertex_count)
        .def("cell_count", &Mesh::cell_count)
        .def("vertex", [](const Mesh& mm, int i) { return to_pair(mm.vertices.at(i)); })
        .def("cell", [](const Mesh& mm, int i) { return mm.cells.at(i); });

    py::class_<SimulationState>(m, "SimulationState")
        .def_readonly("mesh", &SimulationState::mesh)
        .def_readonly("time", &SimulationState::time)
        .def_readonly("step_index", &SimulationState::step_index)
        .def_property_readonly("epoch", &SimulationState::epoch)
        .def("total_pedestrians", &SimulationState::total_pedestrians)
        .def("densities", [](const SimulationState& s) {
            std::vector<double> out;
            for (const auto& c : s.cells) out.push_back(c.density);
            return out;
        })
        .def("counts", [](const SimulationState& s) {
            std::vector<double> out;
            for (const auto& c : s.cells) out.push_back(c.n_peds);
            return out;
        })
        .def("centroids", [](const SimulationState& s) {
            std::vector<std::pair<double, double>> out;
            for (int ci = 0; ci < s.mesh.cell_count(); ++ci) {
                out.push_back(to_pair(centroid(s.mesh.cell_triangle(ci))));
            }
            return out;
        });

    // geometry kernels
    m.def("triangle_area", &triangle_area);
    m.def("signed_area", &signed_area);
    m.def("centroid", [](const Triangle& t) { return to_pair(centroid(t)); });
    m.def("triangle_intersection_area",
          [](const Triangle& a, const Triangle& b) { return triangle_intersection_area(a, b); });

    // flow model
    m.def("fundamental_speed", &fundamental_speed, py::arg("rho"), py::arg("params"));
    m.def("static_field", [](CaseId id, const ModelParams& p, std::pair<double, double> x) {
        return to_pair(static_field_for_case(id, p)({x.first, x.second}));
    });
    m.def("compose_velocity",
          [](std::pair<double, double> e_stat, std::pair<double, double> grad, double rho,
             const ModelParams& p) {
              return to_pair(compose_velocity({e_stat.first, e_stat.second},
                                              {grad.first, grad.second}, rho, p));
          });

    // scenarios
    m.def("scenario_preset", [](const std::string& name) {
        return scenario_preset(case_from_name(name));
    });
    m.def("initial_density", [](std::pair<double, double> p, const ScenarioSpec& spec) {
        return initial_density({p.first, p.second}, spec);
    });
    m.def("analytic_mass", &analytic_mass);
    m.def("analytic_streamline",
          [](CaseId id, std::pair<double, double> start, const ModelParams& p,
             double param_end, int samples) {
              std::vector<std::pair<double, double>> out;
              for (Point2 q :
                   analytic_streamline(id, {start.first, start.second}, p, param_end, samples)) {
                  out.push_back(to_pair(q));
              }
              return out;
          });

    // stepper
    m.def("make_initial_state", &make_initial_state);
    m.def(
        "step",
        [](SimulationState& s, const ScenarioSpec& spec, GradientScheme scheme) {
            step(s, spec.model, spec.numerics, static_field_for_case(spec.case_id, spec.model),
                 scheme);
        },
        py::arg("state"), py::arg("spec"), py::arg("scheme") = GradientScheme::LineGradient);
    m.def("advect_tracer",
          [](CaseId id, std::pair<double, double> start, const ModelParams& p, double dt,
             int n_steps) {
              std::vector<std::pair<double, double>> out;
              for (Point2 q : advect_tracer(static_field_for_case(id, p),
                                            {start.first, start.second}, p, dt, n_steps)) {
                  out.push_back(to_pair(q));
              }
              return out;
          });

    // run with in-memory record collection
    m.def(
        "run_collect",
        [](const ScenarioSpec& spec, double duration, std::vector<double> snapshot_times,
           GradientScheme scheme) {
            MemorySink sink;
            const RunSummary summary = run(spec, duration, std::move(snapshot_times), sink, scheme);
            py::dict out;
            out["steps"] = summary.steps;
            out["remeshes"] = summary.remesh_count;
            out["initial_total"] = summary.initial_total;
            out["final_total"] = summary.final_total;
            py::list snaps;
            for (const auto& [time, records] : sink.snapshots) {
                py::list rows;
                for (const auto& r : records) {
                    rows.append(py::make_tuple(r.time, r.epoch, r.cell_id, r.cx, r.cy, r.area,
                                               r.n_peds, r.density));
                }
                snaps.append(py::make_tuple(time, rows));
            }
            out["snapshots"] = snaps;
            py::list traj;
            for (const auto& r : sink.trajectory_records) {
                traj.append(py::make_tuple(r.time, r.epoch, r.cell_id, r.cx, r.cy, r.n_peds));
            }
            out["trajectories"] = traj;
            return out;
        },
        py::arg("spec"), py::arg("duration"), py::arg("snapshot_times"),
        py::arg("scheme") = GradientScheme::LineGradient);

    // config + batch driver (same path the CLI uses)
    m.def("parse_config", [](const std::string& text, const std::string& scenario) {
        std::optional<CaseId> over;
        if (!scenario.empty()) over = case_from_name(scenario);
        return parse_config(text, over);
    });
    m.def("serialize_config", &serialize_config);
    m.def("run_with_config", &run_with_config);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("scenario", &RunConfig::scenario)
        .def_readwrite("duration", &RunConfig::duration)
        .def_readwrite("snapshot_times", &RunConfig::snapshot_times)
        .def_readwrite("out_dir", &RunConfig::out_dir)
        .def_readwrite("gradient_scheme", &RunConfig::gradient_scheme)
        .def_readwrite("render", &RunConfig::render)
        .def_readwrite("quadrature_depth", &RunConfig::quadrature_depth)
        .def_readwrite("model", &RunConfig::model)
        .def_readwrite("group_radius", &RunConfig::group_radius)
        .def_readwrite("numerics", &RunConfig::numerics);

    py::class_<RunSummary>(m, "RunSummary")
        .def_readonly("steps", &RunSummary::steps)
        .def_readonly("remesh_count", &RunSummary::remesh_count)
        .def_readonly("final_time", &RunSummary::final_time)
        .def_readonly("initial_total", &RunSummary::initial_total)
        .def_readonly("final_total", &RunSummary::final_total);
}
