#include "degmlmc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "degmlmc/quadrature.hpp"

namespace degmlmc {

GridSpec::GridSpec(double x_min, double x_max, std::size_t n_cells)
    : x_min_(x_min), x_max_(x_max), n_cells_(n_cells), dx_(0.0) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
    throw std::invalid_argument("GridSpec: need finite x_min < x_max");
  if (n_cells < 2) throw std::invalid_argument("GridSpec: need at least two cells");
  dx_ = (x_max - x_min) / static_cast<double>(n_cells);
}

GridSpec GridSpec::refined(std::size_t factor) const {
  if (factor == 0) throw std::invalid_argument("GridSpec::refined: factor must be positive");
  return GridSpec(x_min_, x_max_, n_cells_ * factor);
}

bool GridSpec::same_domain(const GridSpec& other) const {
  return x_min_ == other.x_min_ && x_max_ == other.x_max_;
}

SolutionField::SolutionField(GridSpec grid, std::vector<double> values, double time)
    : grid_(grid), values_(std::move(values)), time_(time) {
  if (values_.size() != grid_.n_cells())
    throw std::invalid_argument("SolutionField: value count does not match grid");
  if (!(time >= 0.0)) throw std::invalid_argument("SolutionField: time must be nonnegative");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("SolutionField: non-finite value");
}

SolutionField cell_average(const std::function<double(double)>& u0, const GridSpec& grid,
                           std::span<const double> breakpoints) {
  const auto& rule = gauss_legendre(5);
  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  std::sort(cuts.begin(), cuts.end());

  auto integrate_piece = [&](double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
      sum += rule.weights[k] * u0(mid + half * rule.nodes[k]);
    return sum * half;
  };

  std::vector<double> values(grid.n_cells());
  for (std::size_t j = 0; j < grid.n_cells(); ++j) {
    const double left = grid.x_min() + static_cast<double>(j) * grid.dx();
    const double right = (j + 1 == grid.n_cells()) ? grid.x_max() : left + grid.dx();
    double a = left;
    double total = 0.0;
    auto it = std::upper_bound(cuts.begin(), cuts.end(), left);
    for (; it != cuts.end() && *it < right; ++it) {
      total += integrate_piece(a, *it);
      a = *it;
    }
    total += integrate_piece(a, right);
    const double avg = total / (right - left);
    if (!std::isfinite(avg))
      throw std::invalid_argument("cell_average: non-finite quadrature result in cell " +
                                  std::to_string(j));
    values[j] = avg;
  }
  return SolutionField(grid, std::move(values), 0.0);
}

SolutionField cell_average(const InitialData& u0, const GridSpec& grid) {
  return cell_average(u0.fn, grid, u0.breakpoints);
}

InitialData periodic_shift(const InitialData& u0, double shift) {
  const double a = u0.x_min;
  const double len = u0.x_max - u0.x_min;
  auto wrap = [a, len](double x) {
    double y = std::fmod(x - a, len);
    if (y < 0.0) y += len;
    return a + y;
  };
  InitialData out;
  out.x_min = u0.x_min;
  out.x_max = u0.x_max;
  out.fn = [fn = u0.fn, wrap, shift](double x) { return fn(wrap(x - shift)); };
  out.breakpoints.push_back(wrap(a + shift));
  for (double b : u0.breakpoints) out.breakpoints.push_back(wrap(b + shift));
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                        out.breakpoints.end());
  std::ostringstream label;
  label << u0.label << "+shift" << shift;
  out.label = label.str();
  return out;
}

double l1_norm(const SolutionField& u) {
  double sum = 0.0;
  for (double v : u.values()) sum += std::abs(v);
  return sum * u.grid().dx();
}

double linf_norm(const SolutionField& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

double bv_seminorm(std::span<const double> values) {
  const auto n = values.size();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += std::abs(values[(j + 1) % n] - values[j]);
  return sum;
}

double bv_seminorm(const SolutionField& u) { return bv_seminorm(u.values()); }

std::size_t nesting_ratio(const GridSpec& coarse, const GridSpec& fine) {
  if (!coarse.same_domain(fine)) throw std::invalid_argument("grids cover different domains");
  if (fine.n_cells() < coarse.n_cells() || fine.n_cells() % coarse.n_cells() != 0)
    throw std::invalid_argument("grids are not nested: " + std::to_string(coarse.n_cells()) +
                                " cells vs " + std::to_string(fine.n_cells()) + " cells");
  return fine.n_cells() / coarse.n_cells();
}

SolutionField prolong(const SolutionField& u, const GridSpec& fine) {
  const auto r = nesting_ratio(u.grid(), fine);
  std::vector<double> values(fine.n_cells());
  for (std::size_t j = 0; j < u.size(); ++j)
    std::fill_n(values.begin() + static_cast<std::ptrdiff_t>(j * r), r, u[j]);
  return SolutionField(fine, std::move(values), u.time());
}

SolutionField restrict_average(const SolutionField& u, const GridSpec& coarse) {
  const auto r = nesting_ratio(coarse, u.grid());
  std::vector<double> values(coarse.n_cells());
  for (std::size_t j = 0; j < coarse.n_cells(); ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < r; ++k) sum += u[j * r + k];
    values[j] = sum / static_cast<double>(r);
  }
  return SolutionField(coarse, std::move(values), u.time());
}

double l1_distance(const SolutionField& u, const SolutionField& v) {
  const bool u_finer = u.grid().n_cells() >= v.grid().n_cells();
  const GridSpec& fine = u_finer ? u.grid() : v.grid();
  const auto r = u_finer ? nesting_ratio(v.grid(), fine) : nesting_ratio(u.grid(), fine);
  const SolutionField& f = u_finer ? u : v;
  const SolutionField& c = u_finer ? v : u;
  double sum = 0.0;
  for (std::size_t j = 0; j < fine.n_cells(); ++j) sum += std::abs(f[j] - c[j / r]);
  return sum * fine.dx();
}

void write_field(std::ostream& os, const SolutionField& u, const SolutionField* std_field,
                 std::span<const std::string> header_lines) {
  if (std_field && !(std_field->grid() == u.grid()))
    throw std::invalid_argument("write_field: std field on a different grid");
  const auto& g = u.grid();
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "# grid x_min=" << g.x_min() << " x_max=" << g.x_max() << " n_cells=" << g.n_cells()
      << " dx=" << g.dx() << "\n";
  buf << "# time=" << u.time() << "\n";
  for (const auto& line : header_lines) buf << "# " << line << "\n";
  for (std::size_t j = 0; j < g.n_cells(); ++j) {
    buf << g.center(j) << ' ' << u[j];
    if (std_field) buf << ' ' << (*std_field)[j];
    buf << '\n';
  }
  os << buf.str();
}

FieldDump read_field(std::istream& is) {
  std::string line;
  double x_min = std::numeric_limits<double>::quiet_NaN();
  double x_max = x_min;
  std::size_t n_cells = 0;
  double time = 0.0;
  std::vector<std::string> header;
  std::vector<double> values;
  std::vector<double> stds;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.size() > 2 ? line.substr(2) : std::string();
      if (body.rfind("grid ", 0) == 0) {
        std::istringstream in(body.substr(5));
        std::string kv;
        while (in >> kv) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) continue;
          const auto key = kv.substr(0, eq);
          const auto val = kv.substr(eq + 1);
          if (key == "x_min") x_min = std::stod(val);
          if (key == "x_max") x_max = std::stod(val);
          if (key == "n_cells") n_cells = std::stoul(val);
        }
      } else if (body.rfind("time=", 0) == 0) {
        time = std::stod(body.substr(5));
      } else {
        header.push_back(body);
      }
      continue;
    }
    std::istringstream in(line);
    double x = 0.0;
    double v = 0.0;
    if (!(in >> x >> v))
      throw std::invalid_argument("read_field: malformed row at line " + std::to_string(line_no));
    values.push_back(v);
    double s = 0.0;
    if (in >> s) stds.push_back(s);
  }
  if (n_cells == 0) throw std::invalid_argument("read_field: missing grid header");
  if (!stds.empty() && stds.size() != values.size())
    throw std::invalid_argument("read_field: inconsistent column count");
  return FieldDump{SolutionField(GridSpec(x_min, x_max, n_cells), std::move(values), time),
                   std::move(stds), std::move(header)};
}

}  // namespace degmlmc
