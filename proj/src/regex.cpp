#include "fluentc/automata.hpp"
#include "fluentc/error.hpp"

#include <cctype>
#include <map>
#include <set>

namespace fluentc
{

namespace
{

struct token
{
  enum kind_t { symbol, lparen, rparen, bar, star, plus, question, end } kind;
  std::string text;
  std::size_t pos;
};

std::vector<token> tokenize( std::string_view pattern )
{
  std::vector<token> out;
  std::size_t i = 0;
  while ( i < pattern.size() )
  {
    const char c = pattern[i];
    if ( std::isspace( static_cast<unsigned char>( c ) ) )
    {
      ++i;
      continue;
    }
    const auto start = i;
    switch ( c )
    {
    case '(': out.push_back( { token::lparen, "(", start } ); ++i; continue;
    case ')': out.push_back( { token::rparen, ")", start } ); ++i; continue;
    case '|': out.push_back( { token::bar, "|", start } ); ++i; continue;
    case '*': out.push_back( { token::star, "*", start } ); ++i; continue;
    case '+': out.push_back( { token::plus, "+", start } ); ++i; continue;
    case '?': out.push_back( { token::question, "?", start } ); ++i; continue;
    default: break;
    }
    if ( c == '"' )
    {
      auto close = pattern.find( '"', i + 1 );
      if ( close == std::string_view::npos || close == i + 1 )
        throw parse_error( "regex: unterminated or empty quoted symbol at position " + std::to_string( start ) );
      out.push_back( { token::symbol, std::string( pattern.substr( i + 1, close - i - 1 ) ), start } );
      i = close + 1;
      continue;
    }
    if ( std::isalpha( static_cast<unsigned char>( c ) ) || c == '_' )
    {
      while ( i < pattern.size() && ( std::isalnum( static_cast<unsigned char>( pattern[i] ) ) || pattern[i] == '_' || pattern[i] == '\'' ) )
        ++i;
      out.push_back( { token::symbol, std::string( pattern.substr( start, i - start ) ), start } );
      continue;
    }
    throw parse_error( "regex: unexpected character '" + std::string( 1, c ) + "' at position " + std::to_string( start ) );
  }
  out.push_back( { token::end, "", pattern.size() } );
  return out;
}

/// Thompson NFA; epsilon edges use letter index npos.
struct nfa
{
  static constexpr std::size_t epsilon = static_cast<std::size_t>( -1 );
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges;

  std::size_t add_state()
  {
    edges.emplace_back();
    return edges.size() - 1;
  }
  void add_edge( std::size_t from, std::size_t on, std::size_t to ) { edges[from].emplace_back( on, to ); }
};

struct fragment
{
  std::size_t start;
  std::size_t accept;
};

class regex_parser
{
public:
  regex_parser( std::vector<token> tokens, alphabet& sigma, bool collect )
      : tokens_( std::move( tokens ) ), sigma_( sigma ), collect_( collect )
  {
  }

  fragment parse()
  {
    auto f = parse_alternation();
    if ( peek().kind != token::end )
      throw parse_error( "regex: unexpected '" + peek().text + "' at position " + std::to_string( peek().pos ) );
    return f;
  }

  nfa machine;

private:
  const token& peek() const { return tokens_[pos_]; }

  fragment parse_alternation()
  {
    auto left = parse_concatenation();
    while ( peek().kind == token::bar )
    {
      ++pos_;
      auto right = parse_concatenation();
      fragment f{ machine.add_state(), machine.add_state() };
      machine.add_edge( f.start, nfa::epsilon, left.start );
      machine.add_edge( f.start, nfa::epsilon, right.start );
      machine.add_edge( left.accept, nfa::epsilon, f.accept );
      machine.add_edge( right.accept, nfa::epsilon, f.accept );
      left = f;
    }
    return left;
  }

  fragment parse_concatenation()
  {
    std::optional<fragment> acc;
    while ( peek().kind == token::symbol || peek().kind == token::lparen )
    {
      auto next = parse_postfix();
      if ( acc )
      {
        machine.add_edge( acc->accept, nfa::epsilon, next.start );
        acc->accept = next.accept;
      }
      else
      {
        acc = next;
      }
    }
    if ( !acc )
    {
      // empty sequence (e.g. "()" or "a|") denotes the empty word
      fragment f{ machine.add_state(), machine.add_state() };
      machine.add_edge( f.start, nfa::epsilon, f.accept );
      return f;
    }
    return *acc;
  }

  fragment parse_postfix()
  {
    auto f = parse_atom();
    for ( ;; )
    {
      const auto kind = peek().kind;
      if ( kind != token::star && kind != token::plus && kind != token::question )
        return f;
      ++pos_;
      fragment g{ machine.add_state(), machine.add_state() };
      machine.add_edge( g.start, nfa::epsilon, f.start );
      machine.add_edge( f.accept, nfa::epsilon, g.accept );
      if ( kind != token::plus )
        machine.add_edge( g.start, nfa::epsilon, g.accept );
      if ( kind != token::question )
        machine.add_edge( f.accept, nfa::epsilon, f.start );
      f = g;
    }
  }

  fragment parse_atom()
  {
    const auto& t = peek();
    if ( t.kind == token::lparen )
    {
      ++pos_;
      auto f = parse_alternation();
      if ( peek().kind != token::rparen )
        throw parse_error( "regex: expected ')' at position " + std::to_string( peek().pos ) );
      ++pos_;
      return f;
    }
    const auto s = letter_index( t );
    ++pos_;
    fragment f{ machine.add_state(), machine.add_state() };
    machine.add_edge( f.start, s, f.accept );
    return f;
  }

  std::size_t letter_index( const token& t )
  {
    for ( std::size_t s = 0; s < sigma_.size(); ++s )
    {
      if ( sigma_[s].symbol == t.text )
        return s;
    }
    if ( !collect_ )
      throw semantic_error( "regex: undeclared letter '" + t.text + "' at position " + std::to_string( t.pos ) );
    if ( !is_letter_symbol( t.text ) )
      throw parse_error( "regex: invalid letter '" + t.text + "' at position " + std::to_string( t.pos ) );
    sigma_.push_back( letter{ t.text, {} } );
    return sigma_.size() - 1;
  }

  std::vector<token> tokens_;
  std::size_t pos_ = 0;
  alphabet& sigma_;
  bool collect_;
};

std::set<std::size_t> closure( const nfa& machine, std::set<std::size_t> states )
{
  std::vector<std::size_t> stack( states.begin(), states.end() );
  while ( !stack.empty() )
  {
    const auto q = stack.back();
    stack.pop_back();
    for ( const auto& [on, to] : machine.edges[q] )
    {
      if ( on == nfa::epsilon && states.insert( to ).second )
        stack.push_back( to );
    }
  }
  return states;
}

} // namespace

fsm regex_to_fsm( std::string_view pattern, const alphabet& sigma, std::string name )
{
  alphabet letters = sigma;
  regex_parser parser( tokenize( pattern ), letters, sigma.empty() );
  const auto frag = parser.parse();
  const auto& machine = parser.machine;

  fsm dfa;
  dfa.name = std::move( name );
  dfa.letters = letters;

  std::map<std::set<std::size_t>, std::size_t> index;
  std::vector<std::set<std::size_t>> subsets;
  const auto intern = [&]( std::set<std::size_t> subset ) {
    auto [it, inserted] = index.emplace( subset, subsets.size() );
    if ( inserted )
    {
      subsets.push_back( std::move( subset ) );
      dfa.states.push_back( "q" + std::to_string( it->second ) );
      dfa.accepting.push_back( subsets.back().count( frag.accept ) > 0 );
      dfa.delta.emplace_back( letters.size() );
    }
    return it->second;
  };

  dfa.initial = intern( closure( machine, { frag.start } ) );
  for ( std::size_t i = 0; i < subsets.size(); ++i )
  {
    for ( std::size_t s = 0; s < letters.size(); ++s )
    {
      std::set<std::size_t> moved;
      for ( auto q : subsets[i] )
      {
        for ( const auto& [on, to] : machine.edges[q] )
        {
          if ( on == s )
            moved.insert( to );
        }
      }
      if ( moved.empty() )
        continue;
      const auto target = intern( closure( machine, std::move( moved ) ) );
      dfa.delta[i][s] = target;
    }
  }

  if ( !coaccessible( dfa )[dfa.initial] )
  {
    // empty language: a single rejecting state
    fsm empty;
    empty.name = dfa.name;
    empty.letters = dfa.letters;
    empty.states = { "q0" };
    empty.accepting = { false };
    empty.delta.assign( 1, std::vector<std::optional<std::size_t>>( letters.size() ) );
    return empty;
  }
  return prune_dead( dfa );
}

} // namespace fluentc
