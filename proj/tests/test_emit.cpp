#include "support.hpp"

#include "fluentc/emit.hpp"
#include "fluentc/encode.hpp"
#include "fluentc/error.hpp"
#include "fluentc/simulate.hpp"

#include <gtest/gtest.h>

using namespace fluentc;
using namespace fluentc::test;

namespace
{

std::string golden( const std::string& file )
{
  return normalize_sml( read_text( golden_path( file ) ) );
}

fsm cli_builder()
{
  return parse_fsm_spec( read_text( data_path( "cli_builder.json" ) ) );
}

fsm ring_with_letter( const std::string& symbol )
{
  auto m = ring( 2 );
  m.letters[0].symbol = symbol;
  return m;
}

std::size_t count_of( const std::string& text, const std::string& needle )
{
  std::size_t n = 0;
  for ( auto pos = text.find( needle ); pos != std::string::npos; pos = text.find( needle, pos + 1 ) )
    ++n;
  return n;
}

} // namespace

TEST( render_target, sml_goldens )
{
  EXPECT_EQ( normalize_sml( render_target( encode_sparse( ring( 4 ) ), backend::sml ) ), golden( "sparse_ring4.sml" ) );
  EXPECT_EQ( normalize_sml( render_target( encode_shuffle( ring( 4 ) ), backend::sml ) ), golden( "shuffle_ring4.sml" ) );
  EXPECT_EQ( normalize_sml( render_target( encode_church( ring( 4 ) ), backend::sml ) ), golden( "church_ring4.sml" ) );
  EXPECT_EQ( normalize_sml( render_target( encode_tabulation( ring( 4 ) ), backend::sml ) ),
             golden( "tabulation_ring4.sml" ) );
  EXPECT_EQ( normalize_sml( render_target( encode_rewrite_tabulation( dyck_system() ), backend::sml ) ),
             golden( "tabulation_dyck.sml" ) );
}

TEST( render_target, sml_layout )
{
  const auto text = render_target( encode_sparse( ring( 4 ) ), backend::sml );
  EXPECT_EQ( text.rfind( "(* fluent API 'ring4', sparse encoding, generated by fluentc *)\n(* aliases: none *)\n", 0 ), 0u )
      << text;
  EXPECT_EQ( text.back(), '\n' );
  EXPECT_EQ( text.find( '\r' ), std::string::npos );
  EXPECT_NE( text.find( "fun a (g1, g2, g4, g8) f' = f' (g2, g4, g8, g1)\n" ), std::string::npos );
  EXPECT_NE( text.find( "fun $ (_, _, _, T) = ()" ), std::string::npos );
  EXPECT_EQ( file_extension( backend::sml ), ".sml" );
  EXPECT_EQ( file_extension( backend::elm ), ".elm" );
}

TEST( render_target, deterministic )
{
  for ( auto e : { encoding::shuffle, encoding::sparse, encoding::church, encoding::tabulation } )
  {
    for ( auto b : { backend::sml, backend::elm } )
    {
      const auto m = cli_builder();
      EXPECT_EQ( render_target( encode( m, e ), b ), render_target( encode( m, e ), b ) );
    }
  }
}

TEST( render_target, church_header_mentions_dummy_types )
{
  const auto text = render_target( encode_church( ring( 4 ) ), backend::sml );
  EXPECT_NE( text.find( "dummy types" ), std::string::npos );
  EXPECT_EQ( render_target( encode_sparse( ring( 4 ) ), backend::sml ).find( "dummy types" ), std::string::npos );
}

TEST( render_target, subchain_helper )
{
  render_options opts;
  opts.subchain_helper = true;
  EXPECT_NE( render_target( encode_sparse( ring( 4 ) ), backend::sml, opts ).find( "fun sc a b = b a\n" ),
             std::string::npos );
  EXPECT_NE( render_target( encode_sparse( ring( 4 ) ), backend::elm, opts ).find( "sc a b =\n    b a\n" ),
             std::string::npos );
  EXPECT_EQ( render_target( encode_sparse( ring( 4 ) ), backend::sml ).find( "fun sc" ), std::string::npos );
}

TEST( render_target, elm_uses_aliases_and_nested_pairs )
{
  const auto api = encode_sparse( ring( 4 ) );
  const auto text = render_target( api, backend::elm );
  EXPECT_NE( text.find( "module FluentApi exposing (..)\n" ), std::string::npos );
  EXPECT_NE( text.find( "{- aliases: ^^ -> chainStart; $ -> chainEnd; f' -> k; -}" ), std::string::npos ) << text;
  EXPECT_NE( text.find( "chainStart k =\n    k ( F, ( F, ( F, T ) ) )\n" ), std::string::npos ) << text;
  EXPECT_NE( text.find( "a ( g1, ( g2, ( g4, g8 ) ) ) k =\n    k ( g2, ( g4, ( g8, g1 ) ) )\n" ), std::string::npos );
  EXPECT_NE( text.find( "chainEnd ( _, ( _, ( _, T ) ) ) =\n    ()\n" ), std::string::npos );
  const auto body = text.substr( text.find( "module" ) );
  EXPECT_EQ( body.find( "$" ), std::string::npos );
  EXPECT_EQ( body.find( "f'" ), std::string::npos );

  const auto table = alias_table( api, backend::elm );
  ASSERT_EQ( table.size(), 3u );
  EXPECT_EQ( table[0], ( std::pair<std::string, std::string>{ "^^", "chainStart" } ) );
  EXPECT_TRUE( alias_table( api, backend::sml ).empty() );
}

TEST( render_target, elm_names_for_every_encoding )
{
  const auto dyck = render_target( encode_rewrite_tabulation( dyck_system() ), backend::elm );
  EXPECT_EQ( dyck.substr( dyck.find( "module" ) ).find( "$$" ), std::string::npos );
  EXPECT_NE( dyck.find( "type Accept" ), std::string::npos ) << dyck;

  const auto cli = render_target( encode_tabulation( cli_builder() ), backend::elm );
  EXPECT_EQ( cli.substr( cli.find( "module" ) ).find( "||" ), std::string::npos ) << cli;
  EXPECT_NE( cli.find( "|| -> opBarBar;" ), std::string::npos );

  const auto church = render_target( encode_church( ring( 4 ) ), backend::elm );
  // Basics.not is predefined, so the Church negation is renamed
  EXPECT_NE( church.find( "notX b =" ), std::string::npos ) << church;
  EXPECT_EQ( church.find( " (b 0 \"\") + 0" ) != std::string::npos, true );
}

TEST( render_target, unrepresentable_names )
{
  for ( const std::string bad : { "end", "val", "o", "before", "=", "|" } )
  {
    fsm m = ring_with_letter( bad );
    EXPECT_THROW( render_target( encode_sparse( m ), backend::sml ), render_error ) << bad;
  }
  // the Elm backend renames instead of failing
  EXPECT_NO_THROW( render_target( encode_sparse( ring_with_letter( "end" ) ), backend::elm ) );
  EXPECT_NO_THROW( render_target( encode_sparse( ring_with_letter( "||" ) ), backend::sml ) );
}

TEST( render_target, letter_named_like_a_helper )
{
  // a letter called T must not collide with the Boolean constructor
  auto m = ring( 4 );
  m.letters[0].symbol = "T";
  const auto api = encode_sparse( m );
  api.validate();
  const auto text = render_target( api, backend::sml );
  EXPECT_NE( text.find( "fun T (" ), std::string::npos ) << text;
  EXPECT_TRUE( check_equivalence( api, m, 8 ).passed() );
}

TEST( render_target, tokens_mode )
{
  render_options opts;
  opts.tokens = true;
  const auto text = render_target( encode_tabulation( cli_builder() ), backend::sml, opts );
  EXPECT_NE( text.find( "datatype call = Name of string | Description of string | Optional" ), std::string::npos )
      << text;
  EXPECT_NE( text.find( "fun ^^ f' = f' (e0, [])" ), std::string::npos );
  EXPECT_NE( text.find( "fun optional ((_, (_, _, I, _, _, _)), toks) f' = f' (I e, toks @ [Optional])" ),
             std::string::npos );
  EXPECT_NE( text.find( "fun $ (($$, _), toks) = ((); toks)" ), std::string::npos );
}

TEST( with_tokens, collects_one_token_per_call )
{
  const auto plain = encode_tabulation( ring( 4 ) );
  const auto api = with_tokens( plain );
  api.validate();
  const auto o = simulate_chain( api, word( 4, 0 ) );
  ASSERT_TRUE( o.accepted() );
  ASSERT_TRUE( o.tokens );
  EXPECT_EQ( *o.tokens, std::vector<std::string>( 4, "A" ) );
  EXPECT_EQ( simulate_chain( api, word( 5, 0 ) ).verdict, sim_verdict::rejected_at_terminal );

  const auto cli = with_tokens( encode_sparse( cli_builder() ) );
  const auto chain = simulate_chain( cli, std::vector<std::string>{ "name", "description", "argument" },
                                     { { "\"tool\"" }, { "\"does things\"" }, { "\"file\"" } } );
  ASSERT_TRUE( chain.accepted() );
  EXPECT_EQ( *chain.tokens, ( std::vector<std::string>{ "Name(\"tool\")", "Description(\"does things\")",
                                                         "Argument(\"file\")" } ) );
}

TEST( with_tokens, does_not_change_acceptance )
{
  encode_options early;
  early.early_failure = true;
  for ( const auto& m : { ring( 4 ), cli_builder(), random_fsm( 2 ), random_fsm( 9 ) } )
  {
    for ( auto e : { encoding::shuffle, encoding::sparse, encoding::church, encoding::tabulation } )
    {
      for ( const auto& o : { encode_options{}, early } )
      {
        if ( o.early_failure && ( e == encoding::shuffle || e == encoding::church ) )
          continue;
        const auto plain = encode( m, e, o );
        const auto tokens = with_tokens( plain );
        simulator a( plain ), b( tokens );
        for ( const auto& w : enumerate_words( m.num_letters(), m.num_letters() > 3 ? 4 : 6 ) )
        {
          const auto x = a.run( w ), y = b.run( w );
          ASSERT_EQ( to_string( x ), to_string( y ) ) << m.name << " " << to_string( e );
          if ( y.accepted() )
            ASSERT_EQ( y.tokens->size(), w.size() );
        }
      }
    }
  }
  const auto dyck = encode_rewrite_tabulation( dyck_system() );
  EXPECT_TRUE( check_equivalence( with_tokens( dyck ), dyck_system(), 8 ).passed() );
}

TEST( emit_chain_file, ring4_live_and_reject_chains )
{
  const auto api = encode_sparse( ring( 4 ) );
  const auto text = emit_chain_file( api, { { word( 4, 0 ), true }, { word( 5, 0 ), false } }, backend::sml );
  EXPECT_EQ( text.rfind( render_target( api, backend::sml ), 0 ), 0u );
  EXPECT_NE( text.find( "\nval w1 = ^^ a a a a $\n" ), std::string::npos ) << text;
  EXPECT_NE( text.find( "\n(* @reject val w2 = ^^ a a a a a $ *)\n" ), std::string::npos ) << text;
  EXPECT_EQ( count_of( text, "@reject" ), 1u );
}

TEST( emit_chain_file, dyck_chain )
{
  const auto api = encode_rewrite_tabulation( dyck_system() );
  const word w = { 0, 0, 1, 0, 1, 1 };
  const auto text = emit_chain_file( api, { { w, true } }, backend::sml );
  EXPECT_NE( text.find( "val w1 = ^^ L L R L R R $" ), std::string::npos ) << text;
}

TEST( emit_chain_file, empty_list_gives_the_api )
{
  const auto api = encode_tabulation( ring( 4 ) );
  for ( auto b : { backend::sml, backend::elm } )
  {
    const auto text = emit_chain_file( api, {}, b );
    EXPECT_EQ( text.rfind( render_target( api, b ), 0 ), 0u );
    EXPECT_EQ( text.find( "w1" ), std::string::npos );
  }
}

TEST( emit_chain_file, elm_rejects_are_line_comments )
{
  const auto api = encode_sparse( ring( 4 ) );
  const auto text = emit_chain_file( api, { { word( 4, 0 ), true }, { word( 1, 0 ), false } }, backend::elm );
  EXPECT_NE( text.find( "\nw1 =\n    chainStart a a a a chainEnd\n" ), std::string::npos ) << text;
  EXPECT_NE( text.find( "\n-- @reject w2 =\n-- @reject     chainStart a chainEnd\n" ), std::string::npos ) << text;
}

TEST( emit_chain_file, placeholder_arguments )
{
  EXPECT_EQ( placeholder_argument( "string", backend::sml ), "\"\"" );
  EXPECT_EQ( placeholder_argument( "int", backend::sml ), "0" );
  const auto api = encode_sparse( cli_builder() );
  const auto text = emit_chain_file( api, { { { 0, 1 }, true } }, backend::sml );
  EXPECT_NE( text.find( "val w1 = ^^ name \"\" description \"\" $" ), std::string::npos ) << text;
}

TEST( emit_chain_file, chain_names_avoid_definitions )
{
  auto m = ring( 2 );
  m.letters[0].symbol = "w1";
  const auto text = emit_chain_file( encode_sparse( m ), { { word( 2, 0 ), true } }, backend::sml );
  EXPECT_EQ( text.find( "val w1 =" ), std::string::npos ) << text;
  EXPECT_NE( text.find( "= ^^ w1 w1 $" ), std::string::npos ) << text;
}

TEST( parse_backend, names )
{
  EXPECT_EQ( parse_backend( "sml" ), backend::sml );
  EXPECT_EQ( parse_backend( "elm" ), backend::elm );
  EXPECT_EQ( to_string( backend::elm ), "elm" );
  EXPECT_ANY_THROW( parse_backend( "ocaml" ) );
}
