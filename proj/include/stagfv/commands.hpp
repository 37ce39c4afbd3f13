#ifndef STAGFV_COMMANDS_HPP
#define STAGFV_COMMANDS_HPP

#include <iosfwd>
#include <string>

#include "stagfv/audit.hpp"
#include "stagfv/config.hpp"
#include "stagfv/scheme.hpp"

namespace stagfv {

// Field dump: cell rows then face rows, '#' comment carrying time and step.
void write_fields_csv(std::ostream& os, const StaggeredMesh& mesh, const State& state);

// File name for an output time, e.g. fields_t0.2.csv.
std::string fields_file_name(double time);

// Subcommand drivers; they write into config.output_dir and log progress to
// `log`.  Returns the process exit code (0 ok, 3 solver failure); invalid
// configs throw ConfigError before anything is written.
int cmd_run(const RunConfig& config, std::ostream& log);
int cmd_audit(const RunConfig& config, std::ostream& log);  // run with audit on
int cmd_study(const RunConfig& config, std::ostream& log);
int cmd_riemann(const RunConfig& config, std::ostream& log);

}  // namespace stagfv

#endif
