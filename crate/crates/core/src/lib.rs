pub mod checks;
pub mod fp;
pub mod freegrp;
pub mod matgrp;
pub mod pairing;
pub mod series;
pub mod shufalg;
pub mod words;
