#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fluentc
{

/// One API function: its name and the runtime argument types it carries.
struct letter
{
  std::string symbol;
  std::vector<std::string> arg_types;

  bool operator==( const letter& ) const = default;
};

using alphabet = std::vector<letter>;

/// A word is a sequence of indices into an alphabet.
using word = std::vector<std::size_t>;

using state_set = std::vector<bool>;

/*! \brief Deterministic finite automaton with a partial transition function.

  States and letters are identified by their position (declaration order);
  the string names are kept for diagnostics and serialization.
  `delta[q][s]` is the target of state `q` on letter `s`, if defined.
*/
struct fsm
{
  std::string name;
  std::vector<std::string> states;
  alphabet letters;
  std::size_t initial = 0;
  state_set accepting;
  std::vector<std::vector<std::optional<std::size_t>>> delta;

  std::size_t num_states() const { return states.size(); }
  std::size_t num_letters() const { return letters.size(); }
  std::size_t num_transitions() const;
  bool is_total() const;

  std::optional<std::size_t> find_state( std::string_view state_name ) const;
  std::optional<std::size_t> find_letter( std::string_view symbol ) const;

  /// Throws semantic_error if any structural invariant is broken.
  void validate() const;
};

/// Result of running a word on an automaton.
struct run
{
  word input;
  std::vector<std::size_t> states_visited;
  /// 1-based position of the first letter with no transition.
  std::optional<std::size_t> stuck_at;
  bool accepted = false;
};

/// Alphanumeric identifier or a run of operator characters (`||`, `^^`, ...).
bool is_letter_symbol( std::string_view symbol );

/// Parses the JSON FSM document; errors carry the offending line or field.
fsm parse_fsm_spec( std::string_view text );

/// Serializes to the same JSON schema that parse_fsm_spec reads.
std::string fsm_to_json( const fsm& m );

/// n-state cycle on letter `a` whose initial state is the only accepting one.
fsm ring( std::size_t n );

/// Totalizes with a sink state, then pads with sinks to a power of two (at least 2).
fsm totalize_and_pad( const fsm& m );

/// States from which some accepting state is reachable.
state_set coaccessible( const fsm& m );

/// Removes states that cannot reach an accepting state.
fsm prune_dead( const fsm& m );

run fsm_accepts( const fsm& m, std::span<const std::size_t> w );
run fsm_accepts( const fsm& m, std::span<const std::string> symbols );

/// Splits "a b c" into letter indices; throws semantic_error on unknown symbols.
word parse_word( const alphabet& sigma, std::string_view text );
std::string word_to_string( const alphabet& sigma, const word& w );

/*! \brief Enumerates all words up to a maximum length in length-then-lexicographic order. */
class word_stream
{
public:
  word_stream( std::size_t alphabet_size, std::size_t max_len );

  /// Writes the next word into `out`; returns false once exhausted.
  bool next( word& out );

  /// Number of words the stream yields in total.
  std::size_t total() const;

private:
  std::size_t k_;
  std::size_t max_len_;
  word current_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<word> enumerate_words( std::size_t alphabet_size, std::size_t max_len );

/*! \brief Builds a DFA from a regular expression over the given letters.

  Syntax: juxtaposition is concatenation, `|` alternation, postfix `*`, `+`
  and `?`, parentheses for grouping.  Letters are identifiers
  (`[A-Za-z_][A-Za-z0-9_']*`) or double-quoted symbols such as `"||"`.
  If `sigma` is empty, the alphabet is collected from the pattern in order of
  first appearance.
*/
fsm regex_to_fsm( std::string_view pattern, const alphabet& sigma, std::string name = "regex" );

} // namespace fluentc
