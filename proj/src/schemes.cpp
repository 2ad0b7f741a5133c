#include "certirate/schemes.hpp"

#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "certirate/errors.hpp"

namespace certirate {

const char* to_string(SchemeVariant variant) {
  switch (variant) {
    case SchemeVariant::picard:
      return "picard";
    case SchemeVariant::mann:
      return "mann";
    case SchemeVariant::perturbed:
      return "perturbed";
  }
  return "unknown";
}

Trajectory run(const SchemeInstance& instance, Index n_max) {
  if (n_max < 1) throw ParameterError("run needs n_max >= 1");
  const int dim = instance.family.space.dim;
  if (instance.start.size() != dim || instance.q.size() != dim) {
    throw ShapeError("start point, q and the family's space differ in dimension");
  }
  if (instance.variant == SchemeVariant::perturbed && !instance.retractions) {
    throw ParameterError("the perturbed scheme needs retractions");
  }
  Trajectory out;
  out.reserve(n_max + 1);
  out.push_back(instance.start);
  for (Index n = 0; n < n_max; ++n) {
    const Vector& x = out.back();
    Vector next;
    switch (instance.variant) {
      case SchemeVariant::picard:
        next = instance.family(n, x);
        break;
      case SchemeVariant::mann: {
        const double a = instance.steps.alpha(n);
        next = (1.0 - a) * x + a * instance.family(n, x);
        break;
      }
      case SchemeVariant::perturbed: {
        const double a = instance.steps.alpha(n);
        next = (*instance.retractions)(n)((1.0 - a) * x + a * instance.family(n, x));
        break;
      }
    }
    if (!next.allFinite()) {
      std::ostringstream os;
      os << "non-finite iterate at n = " << n + 1;
      throw NumericalBlowupError(os.str(), n + 1);
    }
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<double> residuals(const Trajectory& trajectory, const Vector& q, const LpSpace& space) {
  std::vector<double> out;
  out.reserve(trajectory.size());
  for (const Vector& x : trajectory) out.push_back(lp_norm(space, Vector(x - q)));
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const Vector& q,
                          const LpSpace& space) {
  out << "n";
  for (int i = 0; i < space.dim; ++i) out << ",x" << i;
  out << ",residual\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  const std::vector<double> res = residuals(trajectory, q, space);
  for (std::size_t n = 0; n < trajectory.size(); ++n) {
    out << n;
    for (Eigen::Index i = 0; i < trajectory[n].size(); ++i) out << ',' << trajectory[n](i);
    out << ',' << res[n] << '\n';
  }
}

}  // namespace certirate
