#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ishi/caratheodory.hpp"
#include "ishi/frame.hpp"

// Command layer of the `ishicone` binary. Every subcommand is an ordinary
// function over streams so tests can drive it in-process; the argv front end
// only parses flags and dispatches.
namespace ishi::cli {

// Exit contract shared by all subcommands.
inline constexpr int kExitOk = 0;        // command answered its question
inline constexpr int kExitSemantic = 1;  // axioms, membership, or witness failed
inline constexpr int kExitParse = 2;     // malformed file or command line

enum class Format { table, structured };

struct Options {
  dense::Tolerance tol{};
  Format format = Format::table;
  frame::Side side = frame::Side::primal;
};

// Everything cmd_analyze reports. Each field is produced by the owning
// module; the command layer never computes a verdict itself.
struct AnalysisReport {
  frame::IshiFrame frame;
  frame::AxiomReport axioms;
  caratheodory::ConditionReport primal;
  caratheodory::ConditionReport dual;
  caratheodory::SelfdualReport selfduality;
  int geometric_rank = 0;
};

// Requires a frame whose axioms passed; fills every report field.
AnalysisReport analyze(const frame::IshiFrame& f, const dense::Tolerance& tol);

// Loads a frame file and reports the axiom verdict. Exit 0 iff the axioms
// pass; violations are listed either way.
int cmd_verify(const std::string& frame_file, const Options& opt, std::ostream& out,
               std::ostream& err);

// Full structural report: subspace dimensions, axiom verdict, both
// condition reports, selfduality, geometric rank. Structured output embeds
// the frame so the file round-trips through the report.
int cmd_analyze(const std::string& frame_file, const Options& opt, std::ostream& out,
                std::ostream& err);

// Decomposes a point file against a frame file on the requested side and
// prints the weights, generators and the reconstruction residual. Dual side
// accepts either triangular generator data or a symmetric point (two-ray
// search first, orbit factorization as fallback).
int cmd_decompose(const std::string& frame_file, const std::string& point_file,
                  const Options& opt, std::ostream& out, std::ostream& err);

// Classifies a sparsity pattern file, or with enumerate_n lists the
// connected homogeneous pattern classes on that many vertices.
int cmd_graph(const std::string& graph_file, std::optional<int> enumerate_n, const Options& opt,
              std::ostream& out, std::ostream& err);

// argv front end used by the binary; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ishi::cli
