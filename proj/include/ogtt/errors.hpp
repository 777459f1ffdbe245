#pragma once

#include <stdexcept>
#include <string>

namespace ogtt {

// Base of every error thrown by the library. The CLI maps subclasses to exit
// codes: input errors -> 1, pipeline errors -> 2, I/O errors -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Model parameters that are non-finite or violate their invariants.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Malformed input data: invalid records, inconsistent arguments, empty lists.
class InputError : public Error {
public:
    using Error::Error;
};

// CSV header missing a required column.
class SchemaError : public InputError {
public:
    using InputError::InputError;
};

// Failures of a processing stage on otherwise valid input.
class PipelineError : public Error {
public:
    using Error::Error;
};

class TrainingError : public PipelineError {
public:
    using PipelineError::PipelineError;
};

// Untrained or malformed classifier.
class ModelError : public PipelineError {
public:
    using PipelineError::PipelineError;
};

class GenerationError : public PipelineError {
public:
    using PipelineError::PipelineError;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ogtt
