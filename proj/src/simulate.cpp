#include "fluentc/simulate.hpp"

#include "fluentc/error.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace fluentc
{

using namespace ir;

namespace
{

using value = simulator::value;

/// A failed match: the chain does not type-check at this call.
struct rejection
{
  std::string reason;
};

struct cpat
{
  enum class kind
  {
    var,
    wildcard,
    con,
    tuple
  };
  kind k = kind::wildcard;
  std::uint32_t id = 0;
  std::vector<cpat> items;
};

struct cexpr
{
  enum class kind
  {
    local,
    global,
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
  /// local: frame depth; lambda: frame size
  std::uint32_t depth = 0;
  /// local: slot; global: definition; con: constructor
  std::uint32_t id = 0;
  std::vector<cexpr> items;
  cpat param;
};

struct cdef
{
  std::string name;
  bool is_value = false;
  std::vector<cpat> params;
  std::uint32_t frame_size = 0;
  cexpr body;
};

struct frame
{
  std::shared_ptr<const frame> parent;
  std::vector<value> slots;
};
using frame_ptr = std::shared_ptr<const frame>;

enum class vkind : std::uint8_t
{
  con,
  tuple,
  partial,
  closure,
  literal,
  list,
  identity
};

struct vrec
{
  vkind k;
  /// con: constructor; partial: definition; closure: lambda index; literal: text index
  std::uint32_t a = 0;
  std::vector<value> items;
};

struct closure_rec
{
  const cexpr* lambda;
  frame_ptr env;
};

struct vec_hash
{
  std::size_t operator()( const std::vector<std::uint32_t>& v ) const
  {
    std::size_t h = v.size();
    for ( auto x : v )
      h ^= x + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
    return h;
  }
};

class compiler
{
public:
  compiler( const std::unordered_map<std::string, std::uint32_t>& globals,
            std::unordered_map<std::string, std::uint32_t>& ctors, std::vector<std::string>& ctor_names )
      : globals_( globals ), ctors_( ctors ), ctor_names_( ctor_names )
  {
  }

  cdef compile( const def& d )
  {
    cdef out;
    out.name = d.name;
    out.is_value = d.is_value;
    scopes_.assign( 1, {} );
    for ( const auto& p : d.params )
      out.params.push_back( pat( p ) );
    out.body = expression( d.body );
    out.frame_size = static_cast<std::uint32_t>( scopes_.front().size() );
    return out;
  }

  std::uint32_t ctor( const std::string& name )
  {
    auto [it, fresh] = ctors_.emplace( name, static_cast<std::uint32_t>( ctor_names_.size() ) );
    if ( fresh )
      ctor_names_.push_back( name );
    return it->second;
  }

private:
  cpat pat( const pattern& p )
  {
    cpat out;
    switch ( p.k )
    {
    case pattern::kind::var:
    {
      auto& scope = scopes_.back();
      if ( scope.count( p.name ) )
        throw ir_runtime_error( "variable '" + p.name + "' bound twice in one pattern" );
      out.k = cpat::kind::var;
      out.id = static_cast<std::uint32_t>( scope.size() );
      scope.emplace( p.name, out.id );
      return out;
    }
    case pattern::kind::wildcard: return out;
    case pattern::kind::con:
      out.k = cpat::kind::con;
      out.id = ctor( p.name );
      return out;
    case pattern::kind::tuple:
      if ( p.items.size() == 1 )
        return pat( p.items.front() );
      out.k = cpat::kind::tuple;
      for ( const auto& i : p.items )
        out.items.push_back( pat( i ) );
      return out;
    }
    return out;
  }

  cexpr expression( const expr_ptr& e )
  {
    cexpr out;
    switch ( e->k )
    {
    case expr::kind::var:
    {
      out.k = cexpr::kind::local;
      for ( std::size_t i = scopes_.size(); i-- > 0; )
      {
        auto it = scopes_[i].find( e->name );
        if ( it != scopes_[i].end() )
        {
          out.depth = static_cast<std::uint32_t>( scopes_.size() - 1 - i );
          out.id = it->second;
          return out;
        }
      }
      throw ir_runtime_error( "free variable '" + e->name + "'" );
    }
    case expr::kind::ref:
    {
      auto it = globals_.find( e->name );
      if ( it == globals_.end() )
        throw ir_runtime_error( "free name '" + e->name + "'" );
      out.k = cexpr::kind::global;
      out.id = it->second;
      return out;
    }
    case expr::kind::con:
      out.k = cexpr::kind::con;
      out.id = ctor( e->name );
      break;
    case expr::kind::tuple:
      if ( e->items.size() == 1 )
        return expression( e->items.front() );
      out.k = cexpr::kind::tuple;
      break;
    case expr::kind::app: out.k = cexpr::kind::app; break;
    case expr::kind::lambda:
    {
      out.k = cexpr::kind::lambda;
      scopes_.emplace_back();
      out.param = pat( e->param );
      out.items.push_back( expression( e->items.front() ) );
      out.depth = static_cast<std::uint32_t>( scopes_.back().size() );
      scopes_.pop_back();
      return out;
    }
    case expr::kind::force_true: out.k = cexpr::kind::force_true; break;
    case expr::kind::list_nil: out.k = cexpr::kind::list_nil; break;
    case expr::kind::list_snoc: out.k = cexpr::kind::list_snoc; break;
    case expr::kind::seq: out.k = cexpr::kind::seq; break;
    }
    for ( const auto& i : e->items )
      out.items.push_back( expression( i ) );
    return out;
  }

  const std::unordered_map<std::string, std::uint32_t>& globals_;
  std::unordered_map<std::string, std::uint32_t>& ctors_;
  std::vector<std::string>& ctor_names_;
  std::vector<std::unordered_map<std::string, std::uint32_t>> scopes_;
};

} // namespace

struct simulator::impl
{
  const encoded_api& api;
  std::vector<cdef> defs;
  std::unordered_map<std::string, std::uint32_t> globals;
  std::unordered_map<std::string, std::uint32_t> ctors;
  std::vector<std::string> ctor_names;

  std::vector<vrec> store;
  std::unordered_map<std::size_t, std::vector<value>> interned;
  std::vector<closure_rec> closures;
  std::vector<std::string> literals;
  std::unordered_map<std::string, std::uint32_t> literal_ids;

  struct memo_entry
  {
    std::optional<value> result;
    std::string reason;
  };
  std::unordered_map<std::vector<std::uint32_t>, memo_entry, vec_hash> memo;
  std::vector<std::optional<value>> value_cache;
  std::vector<bool> evaluating;

  std::uint32_t accept_sentinel_con = 0;
  value identity = 0;
  value unit_value = 0;
  value sentinel = 0;

  std::optional<std::vector<value>> rows;
  struct term_signature
  {
    value marker, columns;
    std::size_t arity;
  };
  std::optional<std::vector<term_signature>> signatures;

  explicit impl( const encoded_api& a ) : api( a )
  {
    for ( std::size_t i = 0; i < api.defs.size(); ++i )
    {
      if ( !globals.emplace( api.defs[i].name, static_cast<std::uint32_t>( i ) ).second )
        throw ir_runtime_error( "definition '" + api.defs[i].name + "' appears twice" );
    }
    compiler c( globals, ctors, ctor_names );
    for ( const auto& g : api.datatypes )
      for ( const auto& t : g.types )
        for ( const auto& k : t.ctors )
          c.ctor( k.name );
    accept_sentinel_con = c.ctor( "<accept>" );
    for ( const auto& d : api.defs )
      defs.push_back( c.compile( d ) );
    value_cache.resize( defs.size() );
    evaluating.resize( defs.size() );

    identity = intern( vkind::identity, 0, {} );
    unit_value = intern( vkind::tuple, 0, {} );
    sentinel = intern( vkind::con, accept_sentinel_con, {} );
  }

  std::size_t hash_of( vkind k, std::uint32_t a, const std::vector<value>& items ) const
  {
    return vec_hash{}( items ) * 31 + static_cast<std::size_t>( k ) * 1000003u + a;
  }

  value intern( vkind k, std::uint32_t a, std::vector<value> items )
  {
    auto& bucket = interned[hash_of( k, a, items )];
    for ( auto v : bucket )
    {
      const auto& r = store[v];
      if ( r.k == k && r.a == a && r.items == items )
        return v;
    }
    const auto id = static_cast<value>( store.size() );
    store.push_back( vrec{ k, a, std::move( items ) } );
    bucket.push_back( id );
    return id;
  }

  value literal( const std::string& text )
  {
    auto [it, fresh] = literal_ids.emplace( text, static_cast<std::uint32_t>( literals.size() ) );
    if ( fresh )
      literals.push_back( text );
    return intern( vkind::literal, it->second, {} );
  }

  value make_tuple( std::vector<value> items )
  {
    if ( items.size() == 1 )
      return items.front();
    return intern( vkind::tuple, 0, std::move( items ) );
  }

  std::size_t arity( std::uint32_t d ) const { return defs[d].params.size(); }

  value global( std::uint32_t d )
  {
    if ( !defs[d].is_value )
      return intern( vkind::partial, d, {} );
    if ( value_cache[d] )
      return *value_cache[d];
    if ( evaluating[d] )
      throw ir_runtime_error( "value '" + defs[d].name + "' depends on itself" );
    evaluating[d] = true;
    auto env = std::make_shared<frame>();
    const auto v = eval( defs[d].body, env );
    evaluating[d] = false;
    value_cache[d] = v;
    return v;
  }

  std::string describe( value v ) const { return show( v, 2 ); }

  void match( const cpat& p, value v, frame& f )
  {
    switch ( p.k )
    {
    case cpat::kind::var: f.slots[p.id] = v; return;
    case cpat::kind::wildcard: return;
    case cpat::kind::con:
    {
      const auto& r = store[v];
      if ( r.k == vkind::con )
      {
        if ( r.a != p.id )
          throw rejection{ "expected " + ctor_names[p.id] + ", found " + ctor_names[r.a] };
        return;
      }
      if ( r.k == vkind::tuple && r.items.empty() )
        throw rejection{ "expected " + ctor_names[p.id] + ", found ()" };
      throw ir_runtime_error( "constructor pattern " + ctor_names[p.id] + " against " + describe( v ) );
    }
    case cpat::kind::tuple:
    {
      const auto& r = store[v];
      if ( r.k != vkind::tuple )
        throw ir_runtime_error( "tuple pattern of size " + std::to_string( p.items.size() ) + " against " +
                                describe( v ) );
      if ( r.items.size() != p.items.size() )
        throw ir_runtime_error( "tuple size mismatch: pattern has " + std::to_string( p.items.size() ) +
                                " items, value has " + std::to_string( r.items.size() ) );
      const auto items = r.items;
      for ( std::size_t i = 0; i < items.size(); ++i )
        match( p.items[i], items[i], f );
      return;
    }
    }
  }

  value call( std::uint32_t d, const std::vector<value>& args )
  {
    std::vector<std::uint32_t> key;
    key.reserve( args.size() + 1 );
    key.push_back( d );
    key.insert( key.end(), args.begin(), args.end() );
    if ( auto it = memo.find( key ); it != memo.end() )
    {
      if ( !it->second.result )
        throw rejection{ it->second.reason };
      return *it->second.result;
    }
    const auto& cd = defs[d];
    auto env = std::make_shared<frame>();
    env->slots.resize( cd.frame_size );
    try
    {
      for ( std::size_t i = 0; i < args.size(); ++i )
        match( cd.params[i], args[i], *env );
      const auto v = eval( cd.body, env );
      memo.emplace( std::move( key ), memo_entry{ v, {} } );
      return v;
    }
    catch ( const rejection& r )
    {
      memo.emplace( std::move( key ), memo_entry{ std::nullopt, r.reason } );
      throw;
    }
  }

  value apply( value f, value arg )
  {
    const auto& r = store[f];
    switch ( r.k )
    {
    case vkind::identity: return arg;
    case vkind::partial:
    {
      auto args = r.items;
      const auto d = r.a;
      args.push_back( arg );
      if ( args.size() == arity( d ) )
        return call( d, args );
      return intern( vkind::partial, d, std::move( args ) );
    }
    case vkind::closure:
    {
      const auto c = closures[r.a];
      auto env = std::make_shared<frame>();
      env->parent = c.env;
      env->slots.resize( c.lambda->depth );
      match( c.lambda->param, arg, *env );
      return eval( c.lambda->items.front(), env );
    }
    case vkind::con: throw rejection{ "constructor " + ctor_names[r.a] + " applied as a function" };
    case vkind::tuple:
      if ( r.items.empty() )
        throw rejection{ "unit where index expected" };
      throw ir_runtime_error( "a tuple is applied as a function: " + describe( f ) );
    case vkind::literal:
    case vkind::list: throw ir_runtime_error( "a literal is applied as a function: " + describe( f ) );
    }
    return f;
  }

  value eval( const cexpr& e, const frame_ptr& env )
  {
    switch ( e.k )
    {
    case cexpr::kind::local:
    {
      const frame* f = env.get();
      for ( std::uint32_t i = 0; i < e.depth; ++i )
        f = f->parent.get();
      return f->slots[e.id];
    }
    case cexpr::kind::global: return global( e.id );
    case cexpr::kind::con:
    {
      std::vector<value> args;
      for ( const auto& i : e.items )
        args.push_back( eval( i, env ) );
      return intern( vkind::con, e.id, std::move( args ) );
    }
    case cexpr::kind::tuple:
    {
      std::vector<value> items;
      items.reserve( e.items.size() );
      for ( const auto& i : e.items )
        items.push_back( eval( i, env ) );
      return make_tuple( std::move( items ) );
    }
    case cexpr::kind::app:
    {
      auto f = eval( e.items.front(), env );
      for ( std::size_t i = 1; i < e.items.size(); ++i )
        f = apply( f, eval( e.items[i], env ) );
      return f;
    }
    case cexpr::kind::lambda:
    {
      const auto id = static_cast<std::uint32_t>( closures.size() );
      closures.push_back( closure_rec{ &e, env } );
      const auto v = static_cast<value>( store.size() );
      store.push_back( vrec{ vkind::closure, id, {} } );
      return v;
    }
    case cexpr::kind::force_true:
    {
      const auto b = eval( e.items.front(), env );
      if ( apply( apply( b, sentinel ), unit_value ) != sentinel )
        throw rejection{ "Church Boolean is false" };
      return unit_value;
    }
    case cexpr::kind::list_nil: return intern( vkind::list, 0, {} );
    case cexpr::kind::list_snoc:
    {
      const auto l = eval( e.items[0], env );
      const auto item = eval( e.items[1], env );
      if ( store[l].k != vkind::list )
        throw ir_runtime_error( "appending to a non-list: " + describe( l ) );
      auto items = store[l].items;
      items.push_back( item );
      return intern( vkind::list, 0, std::move( items ) );
    }
    case cexpr::kind::seq:
      eval( e.items[0], env );
      return eval( e.items[1], env );
    }
    return unit_value;
  }

  std::string show( value v, int depth_limit = -1 ) const
  {
    const auto& r = store[v];
    const auto list = [&]( const char* open, const char* close ) {
      if ( depth_limit == 0 )
        return std::string( open ) + "..." + close;
      std::string out = open;
      for ( std::size_t i = 0; i < r.items.size(); ++i )
        out += ( i ? ", " : "" ) + show( r.items[i], depth_limit < 0 ? -1 : depth_limit - 1 );
      return out + close;
    };
    switch ( r.k )
    {
    case vkind::con: return ctor_names[r.a] + ( r.items.empty() ? "" : list( "(", ")" ) );
    case vkind::tuple: return list( "(", ")" );
    case vkind::partial: return defs[r.a].name + ( r.items.empty() ? "" : list( "(", ")" ) );
    case vkind::closure: return "<fn>";
    case vkind::literal: return literals[r.a];
    case vkind::list: return list( "[", "]" );
    case vkind::identity: return "<k>";
    }
    return {};
  }

  std::uint32_t def_index( const std::string& name ) const
  {
    auto it = globals.find( name );
    if ( it == globals.end() )
      throw ir_runtime_error( "no definition named '" + name + "'" );
    return it->second;
  }
};

simulator::simulator( const encoded_api& api ) : p_( std::make_unique<impl>( api ) ) {}
simulator::~simulator() = default;

const encoded_api& simulator::api() const
{
  return p_->api;
}

simulator::value simulator::start()
{
  const auto d = p_->def_index( p_->api.initial().name );
  try
  {
    return p_->apply( p_->global( d ), p_->identity );
  }
  catch ( const rejection& r )
  {
    throw ir_runtime_error( "the initial call is rejected: " + r.reason );
  }
}

simulator::step_result simulator::step( value state, std::size_t letter, const call_args& args )
{
  const auto& d = p_->api.letter_def( letter );
  const auto& types = p_->api.letters.at( letter ).arg_types;
  try
  {
    auto f = p_->apply( p_->global( p_->def_index( d.name ) ), state );
    for ( std::size_t i = 0; i < types.size(); ++i )
    {
      const auto text = i < args.size() ? args[i] : ( types[i] == "string" ? "\"\"" : "0" );
      f = p_->apply( f, p_->literal( text ) );
    }
    return { p_->apply( f, p_->identity ), {} };
  }
  catch ( const rejection& r )
  {
    return { std::nullopt, r.reason };
  }
}

simulator::step_result simulator::finish( value state )
{
  try
  {
    return { p_->apply( p_->global( p_->def_index( p_->api.terminal().name ) ), state ), {} };
  }
  catch ( const rejection& r )
  {
    return { std::nullopt, r.reason };
  }
}

sim_outcome simulator::run( const word& w, const std::vector<call_args>& args, bool record_trace )
{
  sim_outcome out;
  auto state = start();
  if ( record_trace )
    out.trace.push_back( show( state ) );
  static const call_args none;
  for ( std::size_t i = 0; i < w.size(); ++i )
  {
    if ( w[i] >= p_->api.letters.size() )
      throw semantic_error( "letter index " + std::to_string( w[i] ) + " is outside the alphabet" );
    auto r = step( state, w[i], i < args.size() ? args[i] : none );
    if ( !r.state )
    {
      out.verdict = sim_verdict::stuck_at_step;
      out.position = i + 1;
      out.symbol = p_->api.letters[w[i]].symbol;
      out.reason = r.reason;
      return out;
    }
    state = *r.state;
    if ( record_trace )
      out.trace.push_back( show( state ) );
  }
  auto r = finish( state );
  if ( !r.state )
  {
    out.verdict = sim_verdict::rejected_at_terminal;
    out.position = w.size() + 1;
    out.symbol = p_->api.terminal().name;
    out.reason = r.reason;
    return out;
  }
  if ( p_->api.meta.tokens )
    out.tokens = as_tokens( *r.state );
  return out;
}

std::vector<bool> simulator::as_bits( value v ) const
{
  const auto& r = p_->store[v];
  std::vector<value> items = r.k == vkind::tuple ? r.items : std::vector<value>{ v };
  const auto& meta = p_->api.meta;
  std::vector<bool> out;
  for ( auto i : items )
  {
    const auto& x = p_->store[i];
    std::string name;
    if ( x.k == vkind::con && x.items.empty() )
      name = p_->ctor_names[x.a];
    else if ( x.k == vkind::partial && x.items.empty() )
      name = p_->defs[x.a].name;
    if ( name == meta.true_name )
      out.push_back( true );
    else if ( name == meta.false_name )
      out.push_back( false );
    else
      throw ir_runtime_error( "not a Boolean: " + p_->describe( i ) );
  }
  return out;
}

std::optional<std::size_t> simulator::row_index( value v )
{
  if ( !p_->rows )
  {
    std::vector<value> rows;
    for ( const auto& name : p_->api.meta.row_names )
      rows.push_back( p_->global( p_->def_index( name ) ) );
    p_->rows = std::move( rows );
  }
  auto it = std::find( p_->rows->begin(), p_->rows->end(), v );
  if ( it == p_->rows->end() )
    return std::nullopt;
  return static_cast<std::size_t>( it - p_->rows->begin() );
}

term simulator::as_term( value v, const rewrite_system& rs )
{
  const auto& names = p_->api.meta.type_names;
  if ( names.size() != rs.types.size() )
    throw semantic_error( "the rewrite system does not match the encoded API" );
  if ( !p_->signatures )
  {
    std::vector<impl::term_signature> sigs;
    for ( const auto& name : names )
    {
      const auto d = p_->def_index( name );
      const auto& cd = p_->defs[d];
      std::size_t arity = 0;
      value encoded;
      if ( cd.is_value )
      {
        encoded = p_->global( d );
      }
      else
      {
        const auto& param = cd.params.front();
        arity = param.k == cpat::kind::tuple ? param.items.size() : 1;
        encoded = p_->apply( p_->global( d ),
                             p_->make_tuple( std::vector<value>( arity, p_->unit_value ) ) );
      }
      const auto& r = p_->store[encoded];
      if ( r.k != vkind::tuple || r.items.size() != 3 )
        throw ir_runtime_error( "type encoder '" + name + "' does not build a triple" );
      sigs.push_back( { r.items[0], r.items[1], arity } );
    }
    p_->signatures = std::move( sigs );
  }

  const auto& r = p_->store[v];
  if ( r.k != vkind::tuple || r.items.size() != 3 )
    throw ir_runtime_error( "not an encoded term: " + p_->describe( v ) );
  for ( std::size_t t = 0; t < p_->signatures->size(); ++t )
  {
    const auto& s = ( *p_->signatures )[t];
    if ( s.marker != r.items[0] || s.columns != r.items[1] )
      continue;
    term out{ rs.types[t].name, {}, false };
    const auto children = r.items[2];
    if ( s.arity == 1 )
      out.children.push_back( as_term( children, rs ) );
    else if ( s.arity > 1 )
    {
      const auto items = p_->store[children].items;
      for ( auto c : items )
        out.children.push_back( as_term( c, rs ) );
    }
    return out;
  }
  throw ir_runtime_error( "no type symbol matches " + p_->describe( v ) );
}

std::vector<std::string> simulator::as_tokens( value v ) const
{
  const auto& r = p_->store[v];
  if ( r.k != vkind::list )
    throw ir_runtime_error( "not a token list: " + p_->describe( v ) );
  std::vector<std::string> out;
  for ( auto i : r.items )
    out.push_back( show( i ) );
  return out;
}

std::string simulator::show( value v ) const
{
  return p_->show( v );
}

std::string to_string( const sim_outcome& o )
{
  switch ( o.verdict )
  {
  case sim_verdict::accepted: return "accepted";
  case sim_verdict::rejected_at_terminal: return "rejected_at_terminal";
  case sim_verdict::stuck_at_step:
    return "stuck_at_step(" + std::to_string( o.position ) + "," + o.symbol + ")";
  }
  return {};
}

sim_outcome simulate_chain( const encoded_api& api, const word& w, const std::vector<call_args>& args,
                            bool record_trace )
{
  simulator sim( api );
  return sim.run( w, args, record_trace );
}

sim_outcome simulate_chain( const encoded_api& api, const std::vector<std::string>& symbols,
                            const std::vector<call_args>& args, bool record_trace )
{
  word w;
  for ( const auto& s : symbols )
  {
    auto it = std::find_if( api.letters.begin(), api.letters.end(), [&]( const letter& l ) { return l.symbol == s; } );
    if ( it == api.letters.end() )
      throw semantic_error( "unknown letter '" + s + "'" );
    w.push_back( static_cast<std::size_t>( it - api.letters.begin() ) );
  }
  return simulate_chain( api, w, args, record_trace );
}

namespace
{

template<class Oracle>
check_report check_words( const encoded_api& api, std::size_t max_len, const check_options& opts, Oracle oracle )
{
  const auto words = enumerate_words( api.letters.size(), max_len );
  unsigned workers = opts.workers ? opts.workers : std::max( 1u, std::thread::hardware_concurrency() );
  workers = static_cast<unsigned>( std::min<std::size_t>( workers, std::max<std::size_t>( 1, words.size() / 64 ) ) );

  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> first_bad{ none };
  std::vector<std::optional<mismatch>> results( words.size() );
  std::vector<std::exception_ptr> errors( workers );

  const auto work = [&]( unsigned id ) {
    try
    {
      simulator sim( api );
      const auto begin = words.size() * id / workers;
      const auto end = words.size() * ( id + 1 ) / workers;
      for ( auto i = begin; i < end; ++i )
      {
        if ( opts.fail_fast && i > first_bad.load() )
          return;
        const auto outcome = sim.run( words[i] );
        const bool expected = oracle( words[i] );
        if ( outcome.accepted() == expected )
          continue;
        results[i] = mismatch{ words[i], to_string( outcome ), expected ? "accept" : "reject" };
        auto seen = first_bad.load();
        while ( i < seen && !first_bad.compare_exchange_weak( seen, i ) )
        {
        }
      }
    }
    catch ( ... )
    {
      errors[id] = std::current_exception();
    }
  };

  if ( workers == 1 )
    work( 0 );
  else
  {
    std::vector<std::thread> pool;
    for ( unsigned id = 0; id < workers; ++id )
      pool.emplace_back( work, id );
    for ( auto& t : pool )
      t.join();
  }
  for ( const auto& e : errors )
  {
    if ( e )
      std::rethrow_exception( e );
  }

  check_report report;
  const auto stop = opts.fail_fast && first_bad.load() != none ? first_bad.load() + 1 : words.size();
  report.checked = stop;
  for ( std::size_t i = 0; i < stop; ++i )
  {
    if ( results[i] )
      report.mismatches.push_back( std::move( *results[i] ) );
  }
  return report;
}

void check_alphabet( const alphabet& api, const alphabet& oracle )
{
  if ( api.size() != oracle.size() )
    throw semantic_error( "the API and the oracle have different alphabets" );
  for ( std::size_t i = 0; i < api.size(); ++i )
  {
    if ( api[i].symbol != oracle[i].symbol )
      throw semantic_error( "letter " + std::to_string( i + 1 ) + " is '" + api[i].symbol + "' in the API but '" +
                            oracle[i].symbol + "' in the oracle" );
  }
}

} // namespace

check_report check_equivalence( const encoded_api& api, const fsm& oracle, std::size_t max_len,
                                const check_options& opts )
{
  check_alphabet( api.letters, oracle.letters );
  return check_words( api, max_len, opts, [&]( const word& w ) { return fsm_accepts( oracle, w ).accepted; } );
}

check_report check_equivalence( const encoded_api& api, const rewrite_system& oracle, std::size_t max_len,
                                const check_options& opts )
{
  check_alphabet( api.letters, oracle.letters );
  return check_words( api, max_len, opts, [&]( const word& w ) { return rewrite_accepts( oracle, w ).accepted; } );
}

check_report check_early_failure( const encoded_api& api, const fsm& oracle, std::size_t max_len )
{
  check_alphabet( api.letters, oracle.letters );
  const auto total = totalize_and_pad( oracle );
  const auto live = coaccessible( total );
  simulator sim( api );
  check_report report;
  word u;

  const auto visit = [&]( auto&& self, simulator::value state, std::size_t q ) -> void {
    for ( std::size_t s = 0; s < api.letters.size(); ++s )
    {
      const auto next = *total.delta[q][s];
      const auto r = sim.step( state, s );
      const bool failed = !r.state;
      const bool dead = !live[next];
      u.push_back( s );
      ++report.checked;
      if ( failed != dead )
        report.mismatches.push_back( mismatch{ u, failed ? "stuck" : "live", dead ? "dead" : "live" } );
      if ( !failed && u.size() < max_len )
        self( self, *r.state, next );
      u.pop_back();
    }
  };
  if ( max_len > 0 )
    visit( visit, sim.start(), total.initial );
  return report;
}

std::string format_report( const check_report& r, const alphabet& sigma )
{
  std::ostringstream out;
  for ( const auto& m : r.mismatches )
    out << ( m.w.empty() ? std::string( "ε" ) : word_to_string( sigma, m.w ) ) << '\t' << m.simulated << '\t'
        << m.oracle << '\n';
  out << "checked=" << r.checked << " mismatches=" << r.mismatches.size() << '\n';
  return out.str();
}

} // namespace fluentc
