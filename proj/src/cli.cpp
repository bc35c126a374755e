#include "fluentc/cli.hpp"

#include "fluentc/emit.hpp"
#include "fluentc/error.hpp"
#include "fluentc/simulate.hpp"
#include "json_util.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

namespace fluentc
{

namespace
{

using spec_document = std::variant<fsm, rewrite_system>;

std::string read_file( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw parse_error( "cannot read '" + path + "'" );
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file( const std::string& path, const std::string& text )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out || !( out << text ) )
    throw semantic_error( "cannot write '" + path + "'" );
}

spec_document load_spec( const std::string& path )
{
  const auto text = read_file( path );
  if ( detail::parse_document( text ).contains( "types" ) )
    return parse_rewrite_spec( text );
  return parse_fsm_spec( text );
}

std::string encoding_label( encoding e, bool early )
{
  if ( early && e == encoding::sparse )
    return "sparse+early";
  if ( early && e == encoding::tabulation )
    return "tabulation+pruned";
  return to_string( e );
}

/// Options shared by the commands that build an API from one specification.
struct source_options
{
  std::string spec;
  std::size_t states = 0;
  std::string encoding_name = "shuffle";
  bool early = false;
  bool force = false;

  void add_to( CLI::App& cmd, bool with_encoding = true, bool with_source = true )
  {
    if ( with_source )
    {
      cmd.add_option( "--spec", spec, "FSM or rewrite specification (JSON)" );
      cmd.add_option( "--states", states, "use the ring FSM with this many states instead of a spec" )
          ->check( CLI::PositiveNumber );
    }
    if ( with_encoding )
    {
      cmd.add_option( "--encoding", encoding_name, "shuffle, sparse, church or tabulation" )
          ->check( CLI::IsMember( { "shuffle", "sparse", "church", "tabulation" } ) );
      cmd.add_flag( "--early-failure", early, "early failure (sparse) or dead-state pruning (tabulation)" );
    }
    cmd.add_flag( "--force", force, "lift the bit guard to the hard limit" );
  }

  spec_document load() const
  {
    if ( states && !spec.empty() )
      throw semantic_error( "--spec and --states are mutually exclusive" );
    if ( states )
      return ring( states );
    if ( spec.empty() )
      throw semantic_error( "one of --spec or --states is required" );
    return load_spec( spec );
  }

  encode_options encoding_options() const
  {
    encode_options opts;
    opts.early_failure = early;
    opts.force = force;
    return opts;
  }

  encoded_api build( const spec_document& doc ) const
  {
    if ( const auto* rs = std::get_if<rewrite_system>( &doc ) )
      return encode_rewrite_tabulation( *rs );
    return encode( std::get<fsm>( doc ), parse_encoding( encoding_name ), encoding_options() );
  }
};

struct render_flags
{
  std::string target = "sml";
  std::string out;
  bool tokens = false;
  bool subchain = false;

  void add_to( CLI::App& cmd )
  {
    cmd.add_option( "--target", target, "sml or elm" )->check( CLI::IsMember( { "sml", "elm" } ) );
    cmd.add_option( "--out", out, "output file (default: standard output)" );
    cmd.add_flag( "--tokens", tokens, "accumulate a token list through the chain" );
    cmd.add_flag( "--subchain-helper", subchain, "emit the helper `sc a b = b a`" );
  }

  render_options options() const { return { tokens, subchain }; }
};

void emit_api( const encoded_api& api, const render_flags& flags, std::ostream& out, std::ostream& err )
{
  const auto text = render_target( api, parse_backend( flags.target ), flags.options() );
  const auto summary = "definitions=" + std::to_string( api.definition_count() ) +
                       " bytes=" + std::to_string( text.size() ) + "\n";
  if ( flags.out.empty() )
  {
    out << text;
    err << summary;
  }
  else
  {
    write_file( flags.out, text );
    out << summary;
  }
}

bool oracle_accepts( const spec_document& doc, const word& w )
{
  if ( const auto* rs = std::get_if<rewrite_system>( &doc ) )
    return rewrite_accepts( *rs, w ).accepted;
  return fsm_accepts( std::get<fsm>( doc ), w ).accepted;
}

} // namespace

bench_row bench_ring( encoding e, std::size_t n, const encode_options& opts )
{
  const auto m = ring( n );
  bench_row row;
  row.encoding = encoding_label( e, opts.early_failure );
  row.ring_states = n;
  row.padded_states = totalize_and_pad( m ).num_states();
  try
  {
    const auto api = encode( m, e, opts );
    row.definition_count = api.definition_count();
    row.tuple_width = api.meta.tuple_width;
    row.rendered_bytes = render_target( api, backend::sml ).size();
  }
  catch ( const guard_error& )
  {
    row.skipped = true;
  }
  return row;
}

std::string bench_csv( const std::vector<bench_row>& rows )
{
  std::ostringstream out;
  out << "encoding,ring_states,padded_states,definition_count,tuple_width,rendered_bytes\n";
  for ( const auto& r : rows )
  {
    out << r.encoding << ',' << r.ring_states << ',' << r.padded_states << ',';
    if ( r.skipped )
      out << "skipped,skipped,skipped\n";
    else
      out << r.definition_count << ',' << r.tuple_width << ',' << r.rendered_bytes << '\n';
  }
  return out.str();
}

int run_cli( int argc, const char* const* argv, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "fluentc: compiles automata and rewrite systems into fluent APIs", "fluentc" };
  app.require_subcommand( 1 );

  source_options gen_src;
  render_flags gen_render;
  auto* generate = app.add_subcommand( "generate", "encode an FSM and render it" );
  gen_src.add_to( *generate );
  gen_render.add_to( *generate );

  source_options rw_src;
  render_flags rw_render;
  auto* generate_rewrite = app.add_subcommand( "generate-rewrite", "encode a rewrite system by tabulation" );
  rw_src.add_to( *generate_rewrite, false );
  rw_render.add_to( *generate_rewrite );

  std::vector<std::string> product_specs;
  source_options product_src;
  render_flags product_render;
  auto* product = app.add_subcommand( "product", "product of several APIs over one alphabet" );
  product->add_option( "--spec", product_specs, "part specification (repeat for each part)" )->required();
  product_src.add_to( *product, true, false );
  product_render.add_to( *product );

  source_options verify_src;
  std::size_t verify_len = 8;
  std::string verify_oracle;
  bool fail_fast = false;
  unsigned workers = 0;
  auto* verify = app.add_subcommand( "verify", "compare the simulated API with the specification" );
  verify_src.add_to( *verify );
  verify->add_option( "--max-len", verify_len, "longest word to check" );
  verify->add_option( "--oracle", verify_oracle, "compare against this specification instead of --spec" );
  verify->add_flag( "--fail-fast", fail_fast, "stop at the first mismatch" );
  verify->add_option( "--workers", workers, "worker threads (0: hardware concurrency)" );

  source_options chain_src;
  render_flags chain_render;
  std::vector<std::string> chain_words;
  std::size_t chain_len = 4;
  auto* chain = app.add_subcommand( "chain", "render the API followed by test chains" );
  chain_src.add_to( *chain );
  chain_render.add_to( *chain );
  chain->add_option( "--word", chain_words, "space-separated letters (repeatable)" );
  chain->add_option( "--max-len", chain_len, "without --word: all words up to this length" );

  std::vector<std::string> bench_encodings{ "shuffle", "sparse", "church", "tabulation" };
  std::vector<std::size_t> bench_states{ 2, 4, 8, 16 };
  bool bench_early = false, bench_force = false;
  std::string bench_out, chain_dir, bench_target = "sml";
  std::vector<std::size_t> chain_lengths;
  for ( std::size_t l = 16; l <= 32768; l *= 2 )
    chain_lengths.push_back( l );
  auto* bench = app.add_subcommand( "bench", "size of ring APIs per encoding (CSV)" );
  bench->add_option( "--encodings", bench_encodings, "encodings to measure" )->delimiter( ',' );
  bench->add_option( "--states", bench_states, "ring sizes" )->delimiter( ',' );
  bench->add_flag( "--early-failure", bench_early, "early failure variants" );
  bench->add_flag( "--force", bench_force, "lift the bit guard to the hard limit" );
  bench->add_option( "--out", bench_out, "CSV file (default: standard output)" );
  bench->add_option( "--chain-dir", chain_dir, "also write one chain file per ring and chain length here" );
  bench->add_option( "--chain-lengths", chain_lengths, "chain lengths for --chain-dir" )->delimiter( ',' );
  bench->add_option( "--target", bench_target, "backend of the chain files" )->check( CLI::IsMember( { "sml", "elm" } ) );

  std::string regex, regex_name = "regex", regex_out;
  std::vector<std::string> regex_letters;
  auto* regex2fsm = app.add_subcommand( "regex2fsm", "build an FSM specification from a regular expression" );
  regex2fsm->add_option( "--regex", regex, "the expression" )->required();
  regex2fsm->add_option( "--alphabet", regex_letters, "letters in order (default: order of appearance)" )
      ->delimiter( ',' );
  regex2fsm->add_option( "--name", regex_name, "name of the FSM" );
  regex2fsm->add_option( "--out", regex_out, "output file (default: standard output)" );

  try
  {
    std::vector<std::string> args;
    for ( int i = argc - 1; i > 0; --i )
      args.emplace_back( argv[i] );
    app.parse( args );
  }
  catch ( const CLI::ParseError& e )
  {
    const auto code = app.exit( e, out, err );
    return code == 0 ? 0 : 2;
  }

  try
  {
    if ( *generate )
    {
      const auto doc = gen_src.load();
      if ( std::holds_alternative<rewrite_system>( doc ) )
        throw semantic_error( "'" + gen_src.spec + "' is a rewrite specification; use generate-rewrite" );
      emit_api( gen_src.build( doc ), gen_render, out, err );
      return 0;
    }
    if ( *generate_rewrite )
    {
      if ( rw_src.states )
        throw semantic_error( "generate-rewrite needs --spec" );
      const auto doc = rw_src.load();
      if ( !std::holds_alternative<rewrite_system>( doc ) )
        throw semantic_error( "'" + rw_src.spec + "' is not a rewrite specification" );
      emit_api( rw_src.build( doc ), rw_render, out, err );
      return 0;
    }
    if ( *product )
    {
      std::vector<encoded_api> parts;
      for ( const auto& path : product_specs )
        parts.push_back( product_src.build( load_spec( path ) ) );
      emit_api( encode_product( parts ), product_render, out, err );
      return 0;
    }
    if ( *verify )
    {
      const auto doc = verify_src.load();
      const auto oracle = verify_oracle.empty() ? doc : load_spec( verify_oracle );
      const auto api = verify_src.build( doc );
      check_options opts;
      opts.workers = workers;
      opts.fail_fast = fail_fast;
      const auto report = std::holds_alternative<rewrite_system>( oracle )
                              ? check_equivalence( api, std::get<rewrite_system>( oracle ), verify_len, opts )
                              : check_equivalence( api, std::get<fsm>( oracle ), verify_len, opts );
      out << format_report( report, api.letters );
      bool passed = report.passed();
      const auto e = parse_encoding( verify_src.encoding_name );
      if ( verify_src.early && std::holds_alternative<fsm>( oracle ) &&
           ( e == encoding::sparse || e == encoding::tabulation ) )
      {
        const auto early = check_early_failure( api, std::get<fsm>( oracle ), verify_len );
        out << "early failure:\n" << format_report( early, api.letters );
        passed = passed && early.passed();
      }
      return passed ? 0 : 1;
    }
    if ( *chain )
    {
      const auto doc = chain_src.load();
      const auto api = chain_src.build( doc );
      std::vector<word> words;
      if ( chain_words.empty() )
        words = enumerate_words( api.letters.size(), chain_len );
      for ( const auto& text : chain_words )
        words.push_back( parse_word( api.letters, text ) );
      std::vector<chain_case> cases;
      for ( const auto& w : words )
        cases.push_back( { w, oracle_accepts( doc, w ) } );
      const auto text = emit_chain_file( api, cases, parse_backend( chain_render.target ), chain_render.options() );
      if ( chain_render.out.empty() )
      {
        out << text;
        return 0;
      }
      write_file( chain_render.out, text );
      simulator sim( api );
      for ( const auto& c : cases )
        out << ( c.w.empty() ? std::string( "ε" ) : word_to_string( api.letters, c.w ) ) << '\t'
            << to_string( sim.run( c.w ) ) << '\t' << ( c.accept ? "accept" : "reject" ) << '\n';
      return 0;
    }
    if ( *bench )
    {
      encode_options opts;
      opts.early_failure = bench_early;
      opts.force = bench_force;
      std::vector<bench_row> rows;
      for ( const auto& name : bench_encodings )
      {
        const auto e = parse_encoding( name );
        for ( auto n : bench_states )
        {
          rows.push_back( bench_ring( e, n, opts ) );
          if ( chain_dir.empty() || rows.back().skipped )
            continue;
          std::filesystem::create_directories( chain_dir );
          const auto m = ring( n );
          const auto api = encode( m, e, opts );
          const auto b = parse_backend( bench_target );
          for ( auto len : chain_lengths )
          {
            const word w( len, 0 );
            const auto file = std::filesystem::path( chain_dir ) /
                              ( rows.back().encoding + "_ring" + std::to_string( n ) + "_len" + std::to_string( len ) +
                                file_extension( b ) );
            write_file( file.string(), emit_chain_file( api, { { w, fsm_accepts( m, w ).accepted } }, b ) );
          }
        }
      }
      const auto csv = bench_csv( rows );
      if ( bench_out.empty() )
        out << csv;
      else
        write_file( bench_out, csv );
      return 0;
    }
    if ( *regex2fsm )
    {
      alphabet sigma;
      for ( const auto& s : regex_letters )
        sigma.push_back( letter{ s, {} } );
      const auto text = fsm_to_json( regex_to_fsm( regex, sigma, regex_name ) );
      if ( regex_out.empty() )
        out << text;
      else
        write_file( regex_out, text );
      return 0;
    }
  }
  catch ( const ir_runtime_error& e )
  {
    err << "error: IR runtime error: " << e.what() << '\n';
    return 1;
  }
  catch ( const std::exception& e )
  {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

} // namespace fluentc
