// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller or oracle broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("id {id} out of range [1, {universe}]")]
    OutOfRange { id: usize, universe: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// Structured-document syntax error with its source position.
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// Semantic validation failure located by a field path such as `sigma[1][0]`.
    #[error("{field}: {message}")]
    Field { field: String, message: String },

    #[error("instance too large for brute force: {0}")]
    TooLarge(String),

    #[error("sink rejected output: {0}")]
    Sink(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Field {
            field: field.into(),
            message: message.into(),
        }
    }
}
