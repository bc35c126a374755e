#include "fluentc/emit.hpp"

#include "fluentc/error.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace fluentc
{

using namespace ir;

backend parse_backend( std::string_view name )
{
  if ( name == "sml" )
    return backend::sml;
  if ( name == "elm" )
    return backend::elm;
  throw semantic_error( "unknown target '" + std::string( name ) + "' (expected sml or elm)" );
}

std::string to_string( backend b )
{
  return b == backend::sml ? "sml" : "elm";
}

std::string file_extension( backend b )
{
  return b == backend::sml ? ".sml" : ".elm";
}

std::string placeholder_argument( const std::string& type, backend )
{
  std::string lower;
  for ( char c : type )
    lower.push_back( static_cast<char>( std::tolower( static_cast<unsigned char>( c ) ) ) );
  return lower == "string" ? "\"\"" : "0";
}

namespace
{

bool is_symbolic( const std::string& name )
{
  return !name.empty() && !std::isalnum( static_cast<unsigned char>( name[0] ) ) && name[0] != '_' && name[0] != '\'';
}

/// Every global and local identifier of an API, in first-use order.
struct name_inventory
{
  std::vector<std::string> globals;
  std::vector<std::string> ctors;
  std::vector<std::string> types;
  std::vector<std::string> locals;

  explicit name_inventory( const encoded_api& api )
  {
    std::set<std::string> seen_locals;
    for ( const auto& g : api.datatypes )
    {
      for ( const auto& t : g.types )
      {
        types.push_back( t.name );
        for ( const auto& c : t.ctors )
          ctors.push_back( c.name );
      }
    }
    for ( const auto& d : api.defs )
    {
      globals.push_back( d.name );
      for ( const auto& p : d.params )
        collect( p, seen_locals );
      collect( d.body, seen_locals );
    }
  }

private:
  void collect( const pattern& p, std::set<std::string>& seen )
  {
    if ( p.k == pattern::kind::var && seen.insert( p.name ).second )
      locals.push_back( p.name );
    for ( const auto& i : p.items )
      collect( i, seen );
  }

  void collect( const expr_ptr& e, std::set<std::string>& seen )
  {
    if ( e->k == expr::kind::lambda )
      collect( e->param, seen );
    for ( const auto& i : e->items )
      collect( i, seen );
  }
};

/// Target-specific spelling of names and of the few syntax forms that differ.
class naming
{
public:
  virtual ~naming() = default;
  virtual std::string global( const std::string& name ) const = 0;
  virtual std::string ctor( const std::string& name ) const = 0;
  virtual std::string type( const std::string& name ) const = 0;
  virtual std::string local( const std::string& name ) const = 0;
};

// ---------------------------------------------------------------------------
// SML

const std::set<std::string>& sml_reserved()
{
  static const std::set<std::string> words{
      "abstype", "and", "andalso", "as", "case", "datatype", "do", "else", "end", "eqtype", "exception", "fn", "fun",
      "functor", "handle", "if", "in", "include", "infix", "infixr", "let", "local", "nonfix", "of", "op", "open",
      "orelse", "raise", "rec", "sharing", "sig", "signature", "struct", "structure", "then", "type", "val", "where",
      "while", "with", "withtype", "true", "false", "nil", "ref", "it",
      // reserved symbols
      ":", "|", "=", "=>", "->", "#", ":>",
      // predefined infix identifiers
      "div", "mod", "*", "/", "+", "-", "^", "::", "@", "<>", ">", ">=", "<", "<=", ":=", "o", "before" };
  return words;
}

class sml_naming : public naming
{
public:
  explicit sml_naming( const encoded_api& api )
  {
    const name_inventory inv( api );
    for ( const auto& n : inv.globals )
      check( n, "definition" );
    for ( const auto& n : inv.ctors )
      check( n, "constructor" );
    for ( const auto& n : inv.locals )
      check( n, "variable" );
    for ( const auto& n : inv.types )
      check( n, "type" );
  }

  std::string global( const std::string& name ) const override { return name; }
  std::string ctor( const std::string& name ) const override { return name; }
  std::string type( const std::string& name ) const override { return name; }
  std::string local( const std::string& name ) const override { return name; }

private:
  static void check( const std::string& name, const char* what )
  {
    if ( sml_reserved().count( name ) )
      throw render_error( std::string( "sml: " ) + what + " '" + name + "' is a reserved word or predefined infix operator" );
    const bool alpha = std::isalpha( static_cast<unsigned char>( name[0] ) ) || name[0] == '\'';
    bool ok = !name.empty();
    for ( char c : name )
    {
      const bool an = std::isalnum( static_cast<unsigned char>( c ) ) || c == '_' || c == '\'';
      const bool sym = std::string_view( "!%&$#+-/:<=>?@\\~`^|*" ).find( c ) != std::string_view::npos;
      ok = ok && ( alpha ? an : sym );
    }
    if ( !ok )
      throw render_error( std::string( "sml: " ) + what + " '" + name + "' is not an SML identifier" );
  }
};

// ---------------------------------------------------------------------------
// Elm

const std::set<std::string>& elm_reserved()
{
  static const std::set<std::string> words{
      // keywords
      "if", "then", "else", "case", "of", "let", "in", "type", "module", "where", "import", "exposing", "as", "port",
      "alias", "infix", "effect", "command", "subscription",
      // names exposed by the default imports
      "toFloat", "round", "floor", "ceiling", "truncate", "max", "min", "compare", "not", "xor", "modBy", "remainderBy",
      "negate", "abs", "clamp", "sqrt", "logBase", "e", "pi", "cos", "sin", "tan", "acos", "asin", "atan", "atan2",
      "degrees", "radians", "turns", "toPolar", "fromPolar", "isNaN", "isInfinite", "identity", "always", "never",
      "Int", "Float", "Order", "LT", "EQ", "GT", "Bool", "True", "False", "String", "Char", "List", "Maybe", "Just",
      "Nothing", "Result", "Ok", "Err", "Cmd", "Sub", "Never", "Program", "Basics", "Tuple", "Debug", "Platform",
      "FluentApi" };
  return words;
}

std::string symbol_word( char c )
{
  switch ( c )
  {
  case '!': return "Bang";
  case '%': return "Percent";
  case '&': return "Amp";
  case '$': return "Dollar";
  case '#': return "Hash";
  case '+': return "Plus";
  case '-': return "Minus";
  case '/': return "Slash";
  case ':': return "Colon";
  case '<': return "Lt";
  case '=': return "Eq";
  case '>': return "Gt";
  case '?': return "Question";
  case '@': return "At";
  case '\\': return "Backslash";
  case '~': return "Tilde";
  case '`': return "Tick";
  case '^': return "Caret";
  case '|': return "Bar";
  case '*': return "Star";
  case '\'': return "P";
  default: return "X";
  }
}

/// camelCase spelling with the first letter forced to the requested case.
std::string elm_spelling( const std::string& name, bool upper )
{
  std::string out;
  bool capitalize = false;
  if ( is_symbolic( name ) )
    out = "op";
  for ( char c : name )
  {
    if ( std::isalnum( static_cast<unsigned char>( c ) ) )
    {
      out.push_back( capitalize ? static_cast<char>( std::toupper( static_cast<unsigned char>( c ) ) ) : c );
      capitalize = false;
    }
    else if ( c == '_' )
    {
      capitalize = true;
    }
    else
    {
      out += symbol_word( c );
    }
  }
  if ( out.empty() || std::isdigit( static_cast<unsigned char>( out[0] ) ) )
    out = "x" + out;
  out[0] = static_cast<char>( upper ? std::toupper( static_cast<unsigned char>( out[0] ) )
                                    : std::tolower( static_cast<unsigned char>( out[0] ) ) );
  return out;
}

/// Injective name map for one namespace, avoiding a shared taken set.
class elm_space
{
public:
  elm_space( std::set<std::string>& taken, bool upper ) : taken_( taken ), upper_( upper ) {}

  void fix( const std::string& name, const std::string& spelled )
  {
    map_[name] = spelled;
    taken_.insert( spelled );
  }

  const std::string& add( const std::string& name )
  {
    auto it = map_.find( name );
    if ( it != map_.end() )
      return it->second;
    auto base = elm_spelling( name, upper_ );
    auto candidate = base;
    if ( elm_reserved().count( candidate ) || taken_.count( candidate ) )
      candidate = base + "X";
    for ( std::size_t k = 2; elm_reserved().count( candidate ) || taken_.count( candidate ); ++k )
      candidate = base + "X" + std::to_string( k );
    taken_.insert( candidate );
    return map_[name] = candidate;
  }

  const std::string& at( const std::string& name ) const
  {
    auto it = map_.find( name );
    if ( it == map_.end() )
      throw render_error( "elm: no spelling for '" + name + "'" );
    return it->second;
  }

  const std::map<std::string, std::string>& entries() const { return map_; }

private:
  std::set<std::string>& taken_;
  bool upper_;
  std::map<std::string, std::string> map_;
};

class elm_naming : public naming
{
public:
  explicit elm_naming( const encoded_api& api )
      : values_( value_taken_, false ), ctors_( upper_taken_, true ), types_( type_taken_, true ),
        locals_( value_taken_, false )
  {
    const name_inventory inv( api );
    values_.fix( "^^", "chainStart" );
    values_.fix( "$", "chainEnd" );
    ctors_.fix( "$$", "Accept" );
    types_.fix( "$$", "Accept" );
    for ( const auto& n : inv.globals )
      values_.add( n );
    for ( const auto& n : inv.ctors )
      ctors_.add( n );
    for ( const auto& n : inv.types )
      types_.add( n );
    if ( value_taken_.count( "k" ) )
      locals_.add( continuation );
    else
      locals_.fix( continuation, "k" );
    for ( const auto& n : inv.locals )
      locals_.add( n );
  }

  std::string global( const std::string& name ) const override { return values_.at( name ); }
  std::string ctor( const std::string& name ) const override { return ctors_.at( name ); }
  std::string type( const std::string& name ) const override { return types_.at( name ); }
  std::string local( const std::string& name ) const override { return locals_.at( name ); }

  /// Fresh value-level name (chain bindings, the subchain helper).
  std::string extra_value( const std::string& name ) { return values_.add( name ); }

private:
  std::set<std::string> value_taken_;
  std::set<std::string> upper_taken_;
  std::set<std::string> type_taken_;
  elm_space values_;
  elm_space ctors_;
  elm_space types_;
  elm_space locals_;
};

// ---------------------------------------------------------------------------
// printers

class printer
{
public:
  printer( const encoded_api& api, backend b, const naming& names ) : api_( api ), b_( b ), names_( names ) {}

  std::string pat( const pattern& p ) const
  {
    switch ( p.k )
    {
    case pattern::kind::var: return names_.local( p.name );
    case pattern::kind::wildcard: return "_";
    case pattern::kind::con: return names_.ctor( p.name );
    case pattern::kind::tuple:
    {
      std::vector<std::string> items;
      for ( const auto& i : p.items )
        items.push_back( pat( i ) );
      return tuple( items );
    }
    }
    return {};
  }

  std::string expr( const expr_ptr& e ) const
  {
    switch ( e->k )
    {
    case expr::kind::var: return names_.local( e->name );
    case expr::kind::ref: return names_.global( e->name );
    case expr::kind::con:
    {
      auto head = names_.ctor( e->name );
      if ( e->items.empty() )
        return head;
      if ( b_ == backend::sml )
      {
        std::vector<std::string> args;
        for ( const auto& a : e->items )
          args.push_back( expr( a ) );
        return head + " " + ( args.size() == 1 ? atom( e->items.front() ) : tuple( args ) );
      }
      for ( const auto& a : e->items )
        head += " " + atom( a );
      return head;
    }
    case expr::kind::tuple:
    {
      std::vector<std::string> items;
      for ( const auto& i : e->items )
        items.push_back( expr( i ) );
      return tuple( items );
    }
    case expr::kind::app:
    {
      std::string out = atom( e->items.front() );
      for ( std::size_t i = 1; i < e->items.size(); ++i )
        out += " " + atom( e->items[i] );
      return out;
    }
    case expr::kind::lambda:
      return b_ == backend::sml ? "fn " + pat( e->param ) + " => " + expr( e->items.front() )
                                : "\\" + pat( e->param ) + " -> " + expr( e->items.front() );
    case expr::kind::force_true:
      return b_ == backend::sml ? "let val b = " + expr( e->items.front() ) + " in (b 0 \"\") + 0 end"
                                : "let b = " + expr( e->items.front() ) + " in (b 0 \"\") + 0";
    case expr::kind::list_nil: return "[]";
    case expr::kind::list_snoc:
      return atom( e->items[0] ) + ( b_ == backend::sml ? " @ [" : " ++ [ " ) + expr( e->items[1] ) +
             ( b_ == backend::sml ? "]" : " ]" );
    case expr::kind::seq:
      return b_ == backend::sml ? "(" + expr( e->items[0] ) + "; " + expr( e->items[1] ) + ")"
                                : "let _ = " + expr( e->items[0] ) + " in " + expr( e->items[1] );
    }
    return {};
  }

  std::string datatypes() const
  {
    std::ostringstream out;
    for ( const auto& g : api_.datatypes )
    {
      for ( std::size_t t = 0; t < g.types.size(); ++t )
      {
        const auto& td = g.types[t];
        if ( b_ == backend::sml )
          out << ( t == 0 ? "datatype " : "     and " );
        else
          out << "type ";
        out << names_.type( td.name ) << " = ";
        for ( std::size_t c = 0; c < td.ctors.size(); ++c )
        {
          out << ( c ? " | " : "" ) << names_.ctor( td.ctors[c].name );
          const auto& args = td.ctors[c].arg_types;
          if ( args.empty() )
            continue;
          if ( b_ == backend::sml )
          {
            out << " of ";
            for ( std::size_t a = 0; a < args.size(); ++a )
              out << ( a ? " * " : "" ) << args[a];
          }
          else
          {
            for ( const auto& a : args )
              out << " " << elm_type( a );
          }
        }
        out << "\n";
      }
      if ( b_ == backend::elm )
        out << "\n";
    }
    return out.str();
  }

  std::string definition( const def& d ) const
  {
    std::string out;
    if ( b_ == backend::sml )
    {
      out = ( d.is_value ? "val " : "fun " ) + names_.global( d.name );
      for ( const auto& p : d.params )
        out += " " + param( p );
      out += " = " + expr( d.body );
    }
    else
    {
      out = names_.global( d.name );
      for ( const auto& p : d.params )
        out += " " + param( p );
      out += " =\n    " + expr( d.body ) + "\n";
    }
    return out + "\n";
  }

private:
  std::string param( const pattern& p ) const
  {
    if ( p.k == pattern::kind::tuple && p.items.size() == 1 )
      return "(" + pat( p.items.front() ) + ")";
    return pat( p );
  }

  std::string tuple( const std::vector<std::string>& items ) const
  {
    if ( items.empty() )
      return "()";
    if ( b_ == backend::sml )
    {
      std::string out = "(";
      for ( std::size_t i = 0; i < items.size(); ++i )
        out += ( i ? ", " : "" ) + items[i];
      return out + ")";
    }
    if ( items.size() == 1 )
      return "(" + items.front() + ")";
    if ( items.size() <= 3 )
    {
      std::string out = "( ";
      for ( std::size_t i = 0; i < items.size(); ++i )
        out += ( i ? ", " : "" ) + items[i];
      return out + " )";
    }
    // wider tuples are right-nested pairs
    std::string out = items.back();
    for ( auto i = items.size() - 1; i-- > 0; )
      out = "( " + items[i] + ", " + out + " )";
    return out;
  }

  std::string atom( const expr_ptr& e ) const
  {
    switch ( e->k )
    {
    case expr::kind::var:
    case expr::kind::ref:
    case expr::kind::tuple:
    case expr::kind::list_nil: return expr( e );
    case expr::kind::con:
      if ( e->items.empty() )
        return expr( e );
      break;
    case expr::kind::seq:
      if ( b_ == backend::sml )
        return expr( e );
      break;
    default: break;
    }
    return "(" + expr( e ) + ")";
  }

  static std::string elm_type( const std::string& t )
  {
    if ( t == "string" )
      return "String";
    if ( t == "int" )
      return "Int";
    if ( t == "bool" )
      return "Bool";
    if ( t == "real" || t == "float" )
      return "Float";
    return elm_spelling( t, true );
  }

  const encoded_api& api_;
  backend b_;
  const naming& names_;
};

std::string header( const encoded_api& api, backend b, const std::vector<std::pair<std::string, std::string>>& aliases )
{
  const auto open = b == backend::sml ? "(* " : "{- ";
  const auto close = b == backend::sml ? " *)" : " -}";
  std::ostringstream out;
  out << open << "fluent API '" << api.name << "', " << api.meta.encoding << " encoding, generated by fluentc" << close
      << "\n";
  out << open << "aliases:";
  if ( aliases.empty() )
    out << " none";
  for ( const auto& [from, to] : aliases )
    out << " " << from << " -> " << to << ";";
  out << close << "\n";
  if ( api.meta.encoding.find( "church" ) != std::string::npos )
  {
    out << open
        << "Church Booleans: entering these definitions one at a time in an interactive top level may produce "
           "\"dummy types\"; compile the file as a whole instead."
        << close << "\n";
  }
  return out.str();
}

encoded_api prepared( const encoded_api& api, const render_options& opts )
{
  if ( opts.tokens && !api.meta.tokens )
    return with_tokens( api );
  return api;
}

struct rendered
{
  std::string text;
  std::string sc_name;
};

std::string subchain_name( const encoded_api& api )
{
  std::set<std::string> names;
  for ( const auto& d : api.defs )
    names.insert( d.name );
  for ( const auto& l : api.letters )
    names.insert( l.symbol );
  std::string sc = "sc";
  for ( std::size_t k = 2; names.count( sc ); ++k )
    sc = "sc_" + std::to_string( k );
  return sc;
}

std::string render_body( const encoded_api& api, backend b, const naming& names,
                         const std::vector<std::pair<std::string, std::string>>& aliases, const std::string* sc )
{
  printer p( api, b, names );
  std::string out = header( api, b, aliases );
  if ( b == backend::elm )
    out += "module FluentApi exposing (..)\n\n\n";
  out += p.datatypes();
  if ( sc )
    out += b == backend::sml ? "fun " + *sc + " a b = b a\n" : *sc + " a b =\n    b a\n\n\n";
  for ( const auto& d : api.defs )
    out += p.definition( d );
  return out;
}

} // namespace

std::vector<std::pair<std::string, std::string>> alias_table( const encoded_api& api, backend b )
{
  std::vector<std::pair<std::string, std::string>> out;
  if ( b == backend::sml )
    return out;
  const elm_naming names( api );
  std::set<std::string> seen;
  const auto add = [&]( const std::string& from, const std::string& to ) {
    if ( from != to && seen.insert( from ).second )
      out.emplace_back( from, to );
  };
  for ( const auto& d : api.defs )
  {
    if ( d.role != def_role::helper )
      add( d.name, names.global( d.name ) );
  }
  for ( const auto& g : api.datatypes )
  {
    for ( const auto& t : g.types )
    {
      for ( const auto& c : t.ctors )
        add( c.name, names.ctor( c.name ) );
    }
  }
  add( continuation, names.local( continuation ) );
  return out;
}

std::string render_target( const encoded_api& source, backend b, const render_options& opts )
{
  const auto api = prepared( source, opts );
  const auto sc = subchain_name( api );
  if ( b == backend::sml )
  {
    const sml_naming names( api );
    return render_body( api, b, names, {}, opts.subchain_helper ? &sc : nullptr );
  }
  elm_naming names( api );
  const auto elm_sc = opts.subchain_helper ? names.extra_value( sc ) : std::string{};
  return render_body( api, b, names, alias_table( api, b ), opts.subchain_helper ? &elm_sc : nullptr );
}

std::string emit_chain_file( const encoded_api& source, const std::vector<chain_case>& cases, backend b,
                             const render_options& opts )
{
  const auto api = prepared( source, opts );
  std::set<std::string> taken;
  for ( const auto& d : api.defs )
    taken.insert( d.name );
  for ( const auto& l : api.letters )
    taken.insert( l.symbol );

  std::string out = render_target( api, b, render_options{ false, opts.subchain_helper } );
  if ( cases.empty() )
    return out;

  std::unique_ptr<elm_naming> elm;
  if ( b == backend::elm )
    elm = std::make_unique<elm_naming>( api );
  const auto spell = [&]( const std::string& name ) { return elm ? elm->global( name ) : name; };

  out += b == backend::sml ? "(* chains *)\n" : "\n\n-- chains\n";
  std::size_t next = 1;
  for ( const auto& c : cases )
  {
    std::string name;
    do
      name = "w" + std::to_string( next++ );
    while ( taken.count( name ) );
    if ( elm )
      name = elm->extra_value( name );

    std::string chain = spell( "^^" );
    for ( auto s : c.w )
    {
      if ( s >= api.letters.size() )
        throw semantic_error( "chain word uses an unknown letter index" );
      chain += " " + spell( api.letters[s].symbol );
      for ( const auto& t : api.letters[s].arg_types )
        chain += " " + placeholder_argument( t, b );
    }
    chain += " " + spell( "$" );

    std::string line = b == backend::sml ? "val " + name + " = " + chain : name + " =\n    " + chain;
    if ( c.accept )
      out += line + "\n";
    else if ( b == backend::sml )
      out += "(* @reject " + line + " *)\n";
    else
    {
      // every line of the binding carries the marker
      std::string commented = "-- @reject ";
      for ( char ch : line )
      {
        commented.push_back( ch );
        if ( ch == '\n' )
          commented += "-- @reject ";
      }
      out += commented + "\n";
    }
    if ( b == backend::elm )
      out += "\n";
  }
  return out;
}

} // namespace fluentc
