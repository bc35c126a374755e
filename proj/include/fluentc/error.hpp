#pragma once

#include <stdexcept>
#include <string>

namespace fluentc
{

/*! \brief Malformed input document (bad JSON, missing or unknown field). */
class parse_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Well-formed input that violates a model invariant
  (undeclared reference, duplicate transition, nondeterministic rule, ...). */
class semantic_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief The bit guard on exhaustive Boolean function sets was exceeded. */
class guard_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief The automaton accepts no word, so no useful API can be built. */
class empty_language_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief An identifier cannot be rendered in the selected backend. */
class render_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Evaluation of the IR went wrong in a way that signals an encoder
  bug (free name, tuple arity mismatch), as opposed to a language rejection. */
class ir_runtime_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace fluentc
