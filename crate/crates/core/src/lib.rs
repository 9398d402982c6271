pub mod automata;
pub mod cli;
pub mod cprs;
pub mod diagrams;
pub mod flow;
pub mod normal_form;
pub mod oracle;
pub mod ordering;
pub mod verify;
pub mod words;
