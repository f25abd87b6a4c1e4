#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "uavsec/framework.hpp"
#include "uavsec/harness.hpp"

namespace uavsec {

// CSV writers. Every file starts with a header row; numbers use %.17g so a
// re-read reproduces the doubles exactly.

/// l,m,c,gamma_l,e_star,gamma_e,phi,secrecy_rate (one row per legitimate node;
/// unassociated nodes have m = c = e_star = -1).
void write_snapshot_csv(std::ostream& out, const SecrecySnapshot& snapshot);

/// round,node,m,c,payoff,winner
void write_association_trace_csv(std::ostream& out, const std::vector<AssociationTraceRow>& trace);

/// iteration,m,x,y,z
void write_trajectory_csv(std::ostream& out, const std::vector<Deployment>& trajectory);

/// iteration,m,c,l,p_qos,p_secrecy,p_total,gamma_l,secrecy_rate. The last two
/// columns are filled from `snapshot` for the final iteration and left empty
/// for earlier ones.
void write_allocation_csv(std::ostream& out, const std::vector<AllocationStep>& steps,
                          const SecrecySnapshot& snapshot);

/// realization,iteration,sum_secrecy_rate,positive_secrecy_pct,association_rounds,
/// altitude_rounds,association_converged,altitude_converged
void write_solution_header(std::ostream& out);
void write_solution_rows(std::ostream& out, int realization, const SolutionRecord& record);

/// scheme,<axis>,realization,sum_secrecy_rate,positive_secrecy_pct,
/// association_rounds,altitude_rounds,runtime_ms
void write_results_csv(std::ostream& out, SweepAxis axis, const std::vector<ResultRow>& rows);
/// Inverse of write_results_csv; the axis comes from the header.
std::vector<ResultRow> read_results_csv(std::istream& in, SweepAxis* axis = nullptr);

/// scheme,<axis>,realizations,mean_sum_secrecy_rate,stderr_sum_secrecy_rate,
/// mean_positive_secrecy_pct,stderr_positive_secrecy_pct,mean_association_rounds,
/// mean_altitude_rounds
void write_summary_csv(std::ostream& out, SweepAxis axis, const std::vector<SummaryRow>& rows);

} // namespace uavsec
