#include "uavsec/io.hpp"

#include <fmt/format.h>

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace uavsec {

void write_snapshot_csv(std::ostream& out, const SecrecySnapshot& snapshot) {
  out << "l,m,c,gamma_l,e_star,gamma_e,phi,secrecy_rate\n";
  for (const auto& r : snapshot.links)
    out << fmt::format("{},{},{},{:.17g},{},{:.17g},{:.17g},{:.17g}\n", r.l, r.uav, r.subchannel, r.sinr,
                       r.eavesdropper, r.eavesdropper_sinr, r.phi, r.secrecy);
}

void write_association_trace_csv(std::ostream& out, const std::vector<AssociationTraceRow>& trace) {
  out << "round,node,m,c,payoff,winner\n";
  for (const auto& t : trace)
    out << fmt::format("{},{},{},{},{:.17g},{}\n", t.round, t.node, t.action.uav, t.action.subchannel, t.payoff,
                       t.winner ? 1 : 0);
}

void write_trajectory_csv(std::ostream& out, const std::vector<Deployment>& trajectory) {
  out << "iteration,m,x,y,z\n";
  for (std::size_t it = 0; it < trajectory.size(); ++it)
    for (int m = 0; m < trajectory[it].n_uavs(); ++m)
      out << fmt::format("{},{},{:.17g},{:.17g},{:.17g}\n", it + 1, m, trajectory[it].uavs(0, m),
                         trajectory[it].uavs(1, m), trajectory[it].uavs(2, m));
}

void write_allocation_csv(std::ostream& out, const std::vector<AllocationStep>& steps,
                          const SecrecySnapshot& snapshot) {
  out << "iteration,m,c,l,p_qos,p_secrecy,p_total,gamma_l,secrecy_rate\n";
  int last = 0;
  for (const auto& s : steps)
    last = std::max(last, s.iteration);
  for (const auto& s : steps) {
    out << fmt::format("{},{},{},{},{:.17g},{:.17g},{:.17g}", s.iteration, s.uav, s.subchannel, s.l, s.p_qos,
                       s.p_secrecy, s.p_total);
    if (s.iteration == last && s.l < static_cast<int>(snapshot.links.size())) {
      const auto& link = snapshot.links[s.l];
      out << fmt::format(",{:.17g},{:.17g}\n", link.sinr, link.secrecy);
    } else {
      out << ",,\n";
    }
  }
}

void write_solution_header(std::ostream& out) {
  out << "realization,iteration,sum_secrecy_rate,positive_secrecy_pct,association_rounds,altitude_rounds,"
         "association_converged,altitude_converged\n";
}

void write_solution_rows(std::ostream& out, int realization, const SolutionRecord& record) {
  for (const auto& it : record.iterations)
    out << fmt::format("{},{},{:.17g},{:.17g},{},{},{},{}\n", realization, it.iteration, it.sum_secrecy_rate,
                       it.positive_secrecy_pct, it.association_rounds, it.altitude_rounds,
                       it.association_converged ? 1 : 0, it.altitude_converged ? 1 : 0);
}

void write_results_csv(std::ostream& out, SweepAxis axis, const std::vector<ResultRow>& rows) {
  out << fmt::format("scheme,{},realization,sum_secrecy_rate,positive_secrecy_pct,association_rounds,"
                     "altitude_rounds,runtime_ms\n",
                     axis_name(axis));
  for (const auto& r : rows)
    out << fmt::format("{},{:.17g},{},{:.17g},{:.17g},{},{},{:.6f}\n", r.scheme, r.value, r.realization,
                       r.sum_secrecy_rate, r.positive_secrecy_pct, r.association_rounds, r.altitude_rounds,
                       r.runtime_ms);
}

std::vector<ResultRow> read_results_csv(std::istream& in, SweepAxis* axis) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("results csv: missing header");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      header.push_back(cell);
  }
  if (header.size() != 8 || header[0] != "scheme" || header[2] != "realization")
    throw std::runtime_error("results csv: unexpected header");
  const SweepAxis parsed = parse_axis(header[1]);
  if (axis)
    *axis = parsed;

  std::vector<ResultRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      cells.push_back(cell);
    if (cells.size() != 8)
      throw std::runtime_error(fmt::format("results csv line {}: expected 8 fields", lineno));
    ResultRow r;
    r.scheme = cells[0];
    r.value = std::stod(cells[1]);
    r.realization = std::stoi(cells[2]);
    r.sum_secrecy_rate = std::stod(cells[3]);
    r.positive_secrecy_pct = std::stod(cells[4]);
    r.association_rounds = std::stoi(cells[5]);
    r.altitude_rounds = std::stoi(cells[6]);
    r.runtime_ms = std::stod(cells[7]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary_csv(std::ostream& out, SweepAxis axis, const std::vector<SummaryRow>& rows) {
  out << fmt::format("scheme,{},realizations,mean_sum_secrecy_rate,stderr_sum_secrecy_rate,"
                     "mean_positive_secrecy_pct,stderr_positive_secrecy_pct,mean_association_rounds,"
                     "mean_altitude_rounds\n",
                     axis_name(axis));
  for (const auto& s : rows)
    out << fmt::format("{},{:.17g},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.scheme, s.value,
                       s.realizations, s.mean_rate, s.stderr_rate, s.mean_pct, s.stderr_pct,
                       s.mean_association_rounds, s.mean_altitude_rounds);
}

} // namespace uavsec
