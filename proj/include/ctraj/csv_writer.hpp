#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "ctraj/frenet.hpp"
#include "ctraj/integrator.hpp"
#include "ctraj/projections.hpp"
#include "ctraj/scenario_config.hpp"

namespace ctraj {

namespace detail {

/// 17 significant digits: enough for exact double round-tripping, and
/// deterministic for golden files.
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/// Writes the trajectory as CSV. Columns: s, position, velocity, kappa, tau,
/// tangential_component, height (quadric runs of a parametrized field),
/// constraint_residual, speed_residual, and the projected coordinates when a
/// chart is requested. Absent torsion (geodesic samples) serializes as nan.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                                 ProjectionChoice projection = ProjectionChoice::none,
                                 const AmbientVector& pole = AmbientVector::r4(0, 0, 0, 1)) {
    const Scenario& sc = traj.scenario;
    const bool four = sc.form.dim() == 4;
    const bool with_height = four && sc.field.parametrized();

    std::string header = "s,x,y,z";
    if (four) header += ",t";
    header += ",vx,vy,vz";
    if (four) header += ",vt";
    header += ",kappa,tau,tangential_component";
    if (with_height) header += ",height";
    header += ",constraint_residual,speed_residual";
    if (projection != ProjectionChoice::none) header += ",proj_x,proj_y,proj_z";
    os << header << "\n";

    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const TrajectorySample& sample = traj.samples[i];
        const TrajectoryState& st = sample.state;
        const FrenetSample frenet = frenet_at(traj, i);

        std::vector<double> row;
        row.push_back(st.s);
        for (int k = 0; k < sc.form.dim(); ++k) row.push_back(st.position[k]);
        for (int k = 0; k < sc.form.dim(); ++k) row.push_back(st.velocity[k]);
        row.push_back(frenet.kappa);
        row.push_back(frenet.tau ? *frenet.tau : std::nan(""));
        row.push_back(tangential_component(traj, i));
        if (with_height) row.push_back(inner(st.position, sc.field.a));
        row.push_back(constraint_residual(sc.form, st.position));
        row.push_back(norm(st.velocity) - 1.0);
        if (projection != ProjectionChoice::none) {
            PlotPoint pp{};
            try {
                switch (projection) {
                    case ProjectionChoice::stereographic:
                        pp = stereographic_s3(st.position, pole);
                        break;
                    case ProjectionChoice::ball: pp = poincare_ball(st.position); break;
                    case ProjectionChoice::half_space:
                        pp = upper_half_space(st.position);
                        break;
                    case ProjectionChoice::none: break;
                }
            } catch (const projection_singular_error& e) {
                throw projection_singular_error(std::string(e.what()) + " (at s = " +
                                                detail::format_real(st.s) + ")");
            }
            row.push_back(pp[0]);
            row.push_back(pp[1]);
            row.push_back(pp[2]);
        }

        std::string line;
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) line += ',';
            line += detail::format_real(row[k]);
        }
        os << line << "\n";
    }
}

}  // namespace ctraj
