#pragma once

#include "fluentc/automata.hpp"
#include "fluentc/boolfn.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace fluentc
{

namespace ir
{

/// Parameter and tuple patterns.  A one-element tuple is the same as its item.
struct pattern
{
  enum class kind
  {
    var,
    wildcard,
    con,
    tuple
  };

  kind k = kind::wildcard;
  std::string name;
  std::vector<pattern> items;

  static pattern var( std::string name );
  static pattern wildcard();
  static pattern con( std::string name );
  static pattern tuple( std::vector<pattern> items );
  static pattern unit() { return tuple( {} ); }

  bool operator==( const pattern& ) const = default;
};

struct expr;
using expr_ptr = std::shared_ptr<const expr>;

/*! \brief Expression node.

  `var` is a local binder, `ref` a top-level definition.  `app` stores the
  function first, followed by its curried arguments.  `force_true` applies a
  Church Boolean to two branches and fails unless the first one is taken.
  `seq` evaluates both items and yields the second.
*/
struct expr
{
  enum class kind
  {
    var,
    ref,
    con,
    tuple,
    app,
    lambda,
    force_true,
    list_nil,
    list_snoc,
    seq
  };

  kind k = kind::tuple;
  std::string name;
  std::vector<expr_ptr> items;
  pattern param;
};

expr_ptr var( std::string name );
expr_ptr ref( std::string name );
expr_ptr con( std::string name, std::vector<expr_ptr> args = {} );
expr_ptr tuple( std::vector<expr_ptr> items );
inline expr_ptr unit() { return tuple( {} ); }
expr_ptr app( expr_ptr fn, std::vector<expr_ptr> args );
expr_ptr lambda( pattern param, expr_ptr body );
expr_ptr force_true( expr_ptr e );
expr_ptr list_nil();
expr_ptr list_snoc( expr_ptr list, expr_ptr item );
expr_ptr seq( expr_ptr first, expr_ptr second );

bool equal( const expr_ptr& a, const expr_ptr& b );

struct constructor
{
  std::string name;
  std::vector<std::string> arg_types;

  bool operator==( const constructor& ) const = default;
};

struct type_decl
{
  std::string name;
  std::vector<constructor> ctors;

  bool operator==( const type_decl& ) const = default;
};

/// Mutually declared types, rendered as `datatype a = ... and b = ...`.
struct datatype_group
{
  std::vector<type_decl> types;

  bool operator==( const datatype_group& ) const = default;
};

enum class def_role
{
  helper,
  initial,
  letter,
  terminal
};

/*! \brief A top-level definition.

  Values (`is_value`) have no parameters.  The API functions have a fixed
  shape: the initial one is `^^ f' = f' payload`, a letter is
  `σ state args... f' = f' next`, and the terminal is `$ state = body`.
*/
struct def
{
  std::string name;
  def_role role = def_role::helper;
  std::size_t letter = 0;
  bool is_value = false;
  std::vector<pattern> params;
  expr_ptr body;
};

bool equal( const def& a, const def& b );

/// Name of the continuation parameter of the API functions.
inline const std::string continuation = "f'";

def make_helper( std::string name, std::vector<pattern> params, expr_ptr body );
def make_value( std::string name, expr_ptr body );
def make_initial( expr_ptr payload );
def make_letter( std::size_t index, std::string symbol, pattern state, std::vector<std::string> arg_names, expr_ptr next );
def make_terminal( pattern state, expr_ptr body );

const expr_ptr& initial_payload( const def& d );
const pattern& letter_state( const def& d );
std::vector<std::string> letter_args( const def& d );
const expr_ptr& letter_next( const def& d );

} // namespace ir

/// Bookkeeping carried along with an encoding, for diagnostics and tests.
struct api_metadata
{
  std::string encoding;
  std::string source;
  unsigned bits = 0;
  std::size_t states = 0;
  std::size_t padded_states = 0;
  std::size_t tuple_width = 0;
  /// Names of the states of the encoded machine, in β order.
  std::vector<std::string> state_names;
  /// Boolean function stored at each tuple position (shuffle family).
  std::vector<bool_fn> functions;
  /// Value definition holding the row of each state (tabulation).
  std::vector<std::string> row_names;
  /// Top-level name of the encoder function of each type symbol (rewrite tabulation).
  std::vector<std::string> type_names;
  std::string accept_con;
  std::string true_name;
  std::string false_name;
  bool tokens = false;
  std::string token_type;
  std::vector<std::string> token_cons;
  std::size_t prelude_defs = 0;
};

/*! \brief A target-independent fluent API program. */
struct encoded_api
{
  std::string name;
  alphabet letters;
  std::vector<ir::datatype_group> datatypes;
  std::vector<ir::def> defs;
  api_metadata meta;

  const ir::def& initial() const;
  const ir::def& terminal() const;
  const ir::def& letter_def( std::size_t index ) const;

  std::size_t definition_count() const { return defs.size(); }

  /*! \brief Structural checks: one initial, one terminal, one definition per
    letter, references only to earlier definitions, bound local variables,
    declared constructors and unique binders per parameter list.  Throws
    semantic_error. */
  void validate() const;
};

/*! \brief Hands out identifiers that avoid a reserved set.

  `fresh("e")` returns `e` if it is free, otherwise `e_2`, `e_3`, ...
*/
class name_pool
{
public:
  name_pool() = default;
  explicit name_pool( const alphabet& letters );

  void reserve( const std::string& name ) { taken_.insert( name ); }
  bool taken( const std::string& name ) const { return taken_.count( name ) > 0; }
  std::string fresh( const std::string& base );

private:
  std::set<std::string> taken_;
};

/// Local binder names used by the encoders; internal top-level names avoid them.
const std::set<std::string>& reserved_locals();

/*! \brief Token mode: threads a list of call tokens through the state.

  Adds a datatype with one constructor per letter (carrying the letter's
  argument types); every letter appends its token and the terminal returns
  the list after the original acceptance check.
*/
encoded_api with_tokens( const encoded_api& api );

} // namespace fluentc
