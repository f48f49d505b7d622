#pragma once

#include <string>
#include <vector>

#include "polyg/builtins.hpp"

namespace polyg {

struct NondeterministicMachine : Error {
  using Error::Error;
};

/// One-tape machine over single-character letters; '_' is the blank. A
/// (state, letter) pair without a transition halts there; the result is the
/// word strictly right of the head, trailing blanks stripped.
struct TuringMachine {
  enum class Move : uint8_t { Left, Right };
  struct Transition {
    std::string from;
    char read;
    std::string to;
    char write;
    Move move;
  };

  std::string name;
  std::vector<char> alphabet;  // blank excluded, always available as '_'
  std::string initial;
  std::vector<Transition> transitions;

  std::vector<const Transition*> at(const std::string& state, char letter) const;
  bool deterministic() const;
  std::vector<std::string> states() const;
  std::vector<char> letters_with_blank() const;
};

/// Text format: `machine NAME`, `alphabet c...`, `start STATE`, and one
/// `trans q a -> q' b M` line per transition (M is L or R).
TuringMachine parse_tm(const std::string& text);
TuringMachine parse_tm_file(const std::string& path);

struct TmRun {
  std::string output;
  uint64_t steps = 0;
  bool halted = false;
};

/// Direct configuration-stepping simulation under the same conventions as
/// the compiled program: the head starts on a blank with the input to its
/// right.
TmRun tm_simulate(const TuringMachine& tm, const std::string& input, uint64_t max_steps = 1 << 20);

/// Word circuits over one sort: eow terminates a word, sym_<c> prepends a
/// letter. The machine becomes one function per (state, letter) pair holding
/// the tape halves, plus a main function that loads the input.
ProgramBundle compile_tm(const TuringMachine& tm, bool allow_nondeterministic = false);

/// The clocked variant: a copy of the arithmetic program computes the clock
/// polynomial from the input size; every simulated transition consumes one
/// tick, and step cells carry the remaining clock as their heat. The bundled
/// interpretation is simple and grid-compatible with every rule.
ProgramBundle compile_clocked_tm(const TuringMachine& tm, const NatExpr& clock);

}  // namespace polyg
