#pragma once

#include <iosfwd>
#include <string>

#include "shieldlab/fairness/periodic.hpp"

namespace shieldlab::fairness {

// Distribution CSV: header `group,recommendation,cost,probability[,p_z1]`,
// one atom per row, group spelled `a` or `b`.
InputDistribution read_distribution_csv(std::istream& in);
InputDistribution read_distribution_csv_file(const std::string& path);
void write_distribution_csv(std::ostream& out, const InputDistribution& dist);
void write_distribution_csv_file(const std::string& path,
                                 const InputDistribution& dist);

// Versioned binary serialization of a synthesized shield (decision and
// infeasibility bits; values are recomputable and not stored).
void write_shield_binary(std::ostream& out, const FairnessShieldTable& table);
void write_shield_binary_file(const std::string& path,
                              const FairnessShieldTable& table);
FairnessShieldTable read_shield_binary(std::istream& in);
FairnessShieldTable read_shield_binary_file(const std::string& path);

// Human-readable export: one row per (time, counters, atom) decision.
void write_shield_csv(std::ostream& out, const FairnessShieldTable& table);
void write_shield_csv_file(const std::string& path,
                           const FairnessShieldTable& table);

// Per-step log of a periodic run: `t,group,rec,cost,decision,bias`.
void write_periodic_csv(std::ostream& out, const PeriodicRun& run);
void write_periodic_csv_file(const std::string& path, const PeriodicRun& run);

}  // namespace shieldlab::fairness
