use thiserror::Error;

use crate::ast::Pos;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{pos}: lexical error: {msg}")]
    Lex { pos: Pos, msg: String },
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: resolution error: {msg}")]
    Resolve { pos: Pos, msg: String },
}

impl DslError {
    pub fn pos(&self) -> Pos {
        match self {
            DslError::Lex { pos, .. } | DslError::Syntax { pos, .. } | DslError::Resolve { pos, .. } => *pos,
        }
    }
}
